use proptest::prelude::*;

use minimal_cubics::algebra::{find_roots, monomials, proj, Embedding, Fe, Form, Gf, UniPoly};
use minimal_cubics::ec::search_curve_with_trace;
use minimal_cubics::surface::{
    count_naive, count_points, double_twist_equivalence, format_form, is_smooth, parse_form, EckardtForm,
};
use minimal_cubics::zeta::{classify_surface_with, traces_from_counts, CountProfile};

const FIELDS: [(u64, u32); 8] = [(2, 1), (2, 4), (3, 1), (3, 3), (5, 2), (7, 1), (13, 1), (2, 7)];

fn field() -> impl Strategy<Value = Gf> {
    (0..FIELDS.len()).prop_map(|i| Gf::new(FIELDS[i].0, FIELDS[i].1).unwrap())
}

fn element(f: &Gf) -> impl Strategy<Value = Fe> {
    (0..f.order()).prop_map(Fe::from_index)
}

fn field_and(n: usize) -> impl Strategy<Value = (Gf, Vec<Fe>)> {
    field().prop_flat_map(move |f| {
        let e = proptest::collection::vec(element(&f), n);
        (Just(f), e)
    })
}

fn form_over(f: Gf, nvars: usize) -> impl Strategy<Value = Form> {
    let n = monomials(nvars, 3).len();
    proptest::collection::vec(element(&f), n).prop_map(move |c| Form::new(&f, nvars, 3, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms((f, v) in field_and(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn frobenius_is_a_ring_map((f, v) in field_and(2)) {
        let (a, b) = (v[0], v[1]);
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(a, f.degree()), a);
    }

    #[test]
    fn embeddings_are_homomorphisms(i in 0usize..4, a in 0u64..1000, b in 0u64..1000) {
        let (p, k, d) = [(2u64, 2u32, 3u32), (3, 1, 4), (5, 2, 2), (2, 3, 2)][i];
        let src = Gf::new(p, k).unwrap();
        let dst = src.extension(d).unwrap();
        let e = Embedding::new(&src, &dst).unwrap();
        let (a, b) = (Fe::from_index(a % src.order()), Fe::from_index(b % src.order()));
        prop_assert_eq!(e.apply(src.add(a, b)), dst.add(e.apply(a), e.apply(b)));
        prop_assert_eq!(e.apply(src.mul(a, b)), dst.mul(e.apply(a), e.apply(b)));
        prop_assert_eq!(e.try_descend(e.apply(a)), Some(a));
    }

    #[test]
    fn roots_are_exactly_the_zeros((f, c) in field_and(5)) {
        let g = UniPoly::new(&f, c);
        prop_assume!(g.degree().unwrap_or(0) > 0);
        let mut roots = find_roots(&g).unwrap();
        roots.sort();
        let zeros: Vec<Fe> = f.elements().filter(|&a| g.eval(a).is_zero()).collect();
        prop_assert_eq!(roots, zeros);
    }

    #[test]
    fn form_files_round_trip(f in form_over(Gf::new(3, 2).unwrap(), 4)) {
        prop_assert_eq!(parse_form(&format_form(&f)).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law_on_a_curve_over_f49(i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let w = search_curve_with_trace(7, 2).unwrap();
        let (ext, pts) = w.points(2).unwrap();
        let e = w.curve_over(&ext).unwrap();
        let (a, b, c) = (&pts[i % pts.len()], &pts[j % pts.len()], &pts[k % pts.len()]);
        let left = e.add(&e.add(a, b).unwrap(), c).unwrap();
        let right = e.add(a, &e.add(b, c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(e.add(a, b).unwrap(), e.add(b, a).unwrap());
        prop_assert_eq!(e.neg(&e.neg(a).unwrap()).unwrap(), proj::normalize(&ext, a));
        prop_assert!(e.is_zero(&e.mul(pts.len() as i64, a).unwrap()));
    }

    #[test]
    fn fibered_and_naive_counts_agree(x in form_over(Gf::prime(3).unwrap(), 4)) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(count_points(&x, 1).unwrap(), count_naive(&x, 1).unwrap());
    }

    #[test]
    fn smooth_surfaces_have_integral_traces(x in form_over(Gf::prime(5).unwrap(), 4)) {
        prop_assume!(is_smooth(&x).unwrap());
        let counts = (1..=2).map(|d| count_points(&x, d).unwrap()).collect();
        let profile = CountProfile { q: 5, counts };
        prop_assert!(traces_from_counts(&profile).is_ok());
    }

    #[test]
    fn classes_are_stable_with_depth(x in form_over(Gf::prime(2).unwrap(), 4)) {
        prop_assume!(is_smooth(&x).unwrap());
        let budget = 1u128 << 40;
        let c = classify_surface_with(&x, budget, 0).unwrap();
        let deeper = classify_surface_with(&x, budget, 2).unwrap();
        prop_assert!(c.class.is_some());
        prop_assert_eq!(&c.class, &deeper.class);
        prop_assert_eq!(&c.counts[..], &deeper.counts[..c.counts.len()]);
        // N_1 = 1 + q t_1 + q^2.
        prop_assert_eq!(c.counts[0] as i64, 1 + 2 * c.traces[0] + 4);
    }

    #[test]
    fn eckardt_shape_is_preserved_by_the_involution(
        l in proptest::collection::vec(0u64..7, 3),
        c in form_over(Gf::prime(7).unwrap(), 3),
    ) {
        let f = Gf::prime(7).unwrap();
        prop_assume!(l.iter().any(|&a| a != 0));
        let lin = Form::linear(&f, &l.iter().map(|&a| Fe::from_index(a)).collect::<Vec<_>>());
        let e = EckardtForm::new(lin, c).unwrap();
        let x = e.surface();
        prop_assert!(x.eval(&[Fe::ZERO, Fe::ZERO, Fe::ZERO, f.one()]).is_zero());
        let mut flip = vec![vec![Fe::ZERO; 4]; 4];
        for (i, row) in flip.iter_mut().enumerate() {
            row[i] = if i == 3 { f.neg(f.one()) } else { f.one() };
        }
        prop_assert_eq!(x.substitute(&flip), x.clone());
        let (_, change) = double_twist_equivalence(&e).unwrap();
        let twice = change.push_forward(&x);
        prop_assert_eq!(change.pull_back(&twice), x);
    }
}
