//! The eight end-to-end acceptance checks. Each test prints one PASS/FAIL
//! line, written straight to stderr so it shows up without --nocapture.

use std::io::Write;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use minimal_cubics::algebra::{monomials, Fe, Form, Gf};
use minimal_cubics::blowup::{
    anticanonical_surface, c10_pipeline, choose_parameters, combinatorial_count, f2_normal_form_singular_points, f2_one_point_cubics,
    f2_scan, C10Construction,
};
use minimal_cubics::ec::{inflection_points, recipe_c11_c12, recipe_c13, recipe_c14, BranchRecipe};
use minimal_cubics::surface::{
    count_naive, count_points, cyclic_surface, distinguished_lines, double_twist_equivalence, eckardt_points_on_hyperplane_curve,
    is_smooth, quadratic_twist, EckardtForm, DEFAULT_BUDGET,
};
use minimal_cubics::weyl::table::{charpoly_from_eigen, TABLE};
use minimal_cubics::weyl::{verify_structure_lemmas, weyl, ClassId};
use minimal_cubics::zeta::{
    classify_surface, distinguishing_depth, identify_class, p_of_t, predicted_counts, traces_from_counts, Identification,
};

fn criterion(n: u32, what: &str, body: impl FnOnce()) {
    let result = catch_unwind(AssertUnwindSafe(body));
    let verdict = if result.is_ok() { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "acceptance criterion {n} ({what}): {verdict}");
    if let Err(e) = result {
        resume_unwind(e);
    }
}

/// Class of `x` by exact counts, which must equal the class's predicted
/// counts.
fn class_of(x: &Form) -> ClassId {
    let c = classify_surface(x, DEFAULT_BUDGET).unwrap();
    let id = c.class_id().unwrap_or_else(|| panic!("ambiguous: {:?}", c.candidates));
    assert_eq!(c.counts, predicted_counts(id, c.q, c.depth).counts);
    id
}

const BRANCH_QS: [u64; 3] = [3, 5, 7];

struct PairInstance {
    q: u64,
    recipe: BranchRecipe,
    twist: EckardtForm,
}

fn pairs() -> &'static Vec<PairInstance> {
    static P: OnceLock<Vec<PairInstance>> = OnceLock::new();
    P.get_or_init(|| {
        BRANCH_QS
            .iter()
            .map(|&q| {
                let (recipe, twist) = recipe_c11_c12(q).unwrap();
                PairInstance { q, recipe, twist }
            })
            .collect()
    })
}

fn c10s() -> &'static Vec<C10Construction> {
    static C: OnceLock<Vec<C10Construction>> = OnceLock::new();
    C.get_or_init(|| BRANCH_QS.iter().map(|&q| c10_pipeline(q).unwrap()).collect())
}

#[test]
fn criterion_1_weyl_group_and_class_table() {
    criterion(1, "W(E6) order and class table", || {
        let w = weyl();
        assert_eq!(w.len(), 51840);
        let classes = w.conjugacy_classes();
        assert_eq!(classes.len(), 25);
        assert_eq!(classes.iter().map(|c| c.class_size).sum::<usize>(), 51840);
        let rows: Vec<(u64, Vec<i64>)> =
            TABLE.iter().map(|r| (r.order, charpoly_from_eigen(&r.eigenvalues).unwrap())).collect();
        for c in classes {
            let hits: Vec<usize> =
                (0..25).filter(|&i| rows[i].0 == c.order && rows[i].1 == c.charpoly).collect();
            assert_eq!(hits, vec![c.id.0 as usize - 1], "{}", c.id);
        }
    });
}

#[test]
fn criterion_2_minimal_classes_and_structure() {
    criterion(2, "minimal classes and structure lemmas", || {
        let minimal = weyl().minimal_cyclic_classes();
        assert_eq!(minimal, (10..=14).map(ClassId).collect::<Vec<_>>());
        let report = verify_structure_lemmas(weyl());
        assert_eq!(report.checks.len(), 5);
        for c in &report.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    });
}

#[test]
fn criterion_3_zeta_round_trip() {
    criterion(3, "zeta round trip and P(t) factorizations", || {
        let depth = distinguishing_depth();
        for c in weyl().conjugacy_classes() {
            for q in [2, 3, 4, 5] {
                let tv = traces_from_counts(&predicted_counts(c.id, q, depth)).unwrap();
                assert_eq!(identify_class(&tv).unwrap(), Identification::Unique(c.id), "{} q={q}", c.id);
            }
        }
        let expect = [
            (10, "(1−qt)(1+qt)²(1+qt+q²t²)(1−qt+q²t²)"),
            (11, "(1−qt)(1+qt+q²t²)³"),
            (12, "(1−qt)(1+qt+q²t²)(1−qt+q²t²)²"),
            (13, "(1−qt)(1+qt+q²t²)(1−q²t²+q⁴t⁴)"),
            (14, "(1−qt)(1+q³t³+q⁶t⁶)"),
        ];
        for (c, s) in expect {
            for q in [2, 3, 5] {
                assert_eq!(p_of_t(ClassId(c), q).factored, s);
            }
        }
    });
}

#[test]
fn criterion_4_constructions_by_class() {
    criterion(4, "constructions of c10..c14", || {
        for r in pairs() {
            let mut got = [class_of(&r.recipe.form.surface()), class_of(&r.twist.surface())];
            got.sort();
            assert_eq!(got, [ClassId(11), ClassId(12)], "q = {}", r.q);
        }
        for q in BRANCH_QS {
            assert_eq!(class_of(&recipe_c13(q).unwrap().form.surface()), ClassId(13), "q = {q}");
        }
        for q in [7, 13] {
            let r = recipe_c14(q).unwrap();
            assert_eq!(class_of(&cyclic_surface(&r.f).unwrap()), ClassId(14), "q = {q}");
        }
        for c in c10s() {
            assert_eq!(class_of(&c.map.surface), ClassId(9), "q = {}", c.data.q);
            assert_eq!(class_of(&c.twisted.surface()), ClassId(10), "q = {}", c.data.q);
        }
    });
}

#[test]
fn criterion_5_no_c10_over_f2() {
    criterion(5, "no c10 over F_2, normal form singular, one-point cubics", || {
        let r = f2_scan().unwrap();
        assert_eq!(r.c10, 0);
        assert_eq!(r.histogram.iter().map(|(_, n)| n).sum::<u64>(), r.smooth);
        // Smooth cubic surfaces over F_q number q^4 |PGL_4(F_q)|.
        assert_eq!(r.smooth, 16 * 15 * 14 * 12 * 8);
        assert!(r.three_points_histogram.iter().all(|(c, _)| c != "c10"));
        let f8 = Gf::new(2, 3).unwrap();
        let xi = f8.generator();
        let sing = f2_normal_form_singular_points().unwrap();
        assert!(sing.contains(&vec![xi, f8.pow(xi, 2), f8.pow(xi, 4), f8.one()]));
        let lemma = f2_one_point_cubics().unwrap();
        assert_eq!(lemma.forms, 1023);
        assert!(lemma.filtered > 0);
        assert!(lemma.counterexamples.is_empty());
        assert_eq!(lemma.triangles, lemma.filtered);
    });
}

#[test]
fn criterion_6_eckardt_geometry() {
    criterion(6, "Eckardt points and distinguished lines", || {
        let r = recipe_c14(7).unwrap();
        let e = eckardt_points_on_hyperplane_curve(&r.f).unwrap();
        assert_eq!(e.points.len(), 9);
        let mut flexes: Vec<Vec<Fe>> = inflection_points(&r.f).unwrap().points;
        let mut lifted: Vec<Vec<Fe>> = e.points.iter().map(|p| p[..3].to_vec()).collect();
        flexes.sort();
        lifted.sort();
        assert_eq!(flexes, lifted);
        for p in pairs() {
            let k = p.recipe.form.field().degree();
            let lines = distinguished_lines(&p.recipe.form).unwrap();
            assert_eq!(lines.lines.len(), 12);
            assert_eq!(lines.galois_triangles(k).unwrap().len(), 4, "q = {}", p.q);
        }
        for q in BRANCH_QS {
            let r = recipe_c13(q).unwrap();
            let lines = distinguished_lines(&r.form).unwrap();
            assert_eq!(lines.lines.len(), 12);
            assert!(lines.lines.iter().all(|l| 3 % l.field_degree != 0), "q = {q}");
        }
    });
}

fn random_smooth_cubics(f: &Gf, n: usize, seed: u64) -> Vec<Form> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nm = monomials(4, 3).len();
    let mut out = Vec::new();
    while out.len() < n {
        let coeffs = (0..nm).map(|_| Fe::from_index(rng.gen_range(0..f.order()))).collect();
        let x = Form::new(f, 4, 3, coeffs).unwrap();
        if is_smooth(&x).unwrap() {
            out.push(x);
        }
    }
    out
}

#[test]
fn criterion_7_cross_algorithm_oracles() {
    criterion(7, "fibered vs naive counts, blowup counts", || {
        for (q, seed) in [(3u64, 7u64), (5, 11)] {
            let f = Gf::with_order(q).unwrap();
            for x in random_smooth_cubics(&f, 100, seed) {
                for d in 1..=2 {
                    assert_eq!(count_points(&x, d).unwrap(), count_naive(&x, d).unwrap());
                }
            }
        }
        for q in [3, 5, 7, 9] {
            let data = choose_parameters(q).unwrap();
            let map = anticanonical_surface(&data).unwrap();
            for d in 1..=3 {
                assert_eq!(count_points(&map.surface, d).unwrap(), combinatorial_count(&data, d), "q = {q}, d = {d}");
            }
        }
    });
}

#[test]
fn criterion_8_twist_contract() {
    criterion(8, "quadratic twists c11 <-> c12, c9 -> c10, double twist", || {
        for p in pairs() {
            let a = class_of(&p.recipe.form.surface());
            let b = class_of(&quadratic_twist(&p.recipe.form).unwrap().surface());
            let back = class_of(&quadratic_twist(&p.twist).unwrap().surface());
            let mut ab = [a, b];
            ab.sort();
            assert_eq!(ab, [ClassId(11), ClassId(12)]);
            assert_eq!(back, a);
            double_twist_equivalence(&p.recipe.form).unwrap();
        }
        for c in c10s() {
            assert_eq!(class_of(&c.normalized.form.surface()), ClassId(9));
            assert_eq!(class_of(&quadratic_twist(&c.normalized.form).unwrap().surface()), ClassId(10));
            let (_, change) = double_twist_equivalence(&c.normalized.form).unwrap();
            let twice = quadratic_twist(&quadratic_twist(&c.normalized.form).unwrap()).unwrap();
            assert_eq!(change.pull_back(&twice.surface()), c.normalized.form.surface());
        }
    });
}
