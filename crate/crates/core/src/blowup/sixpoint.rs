//! Two Frobenius orbits of points in P^2(F_{q^3}) whose joining lines
//! p1p4, p2p5, p3p6 meet in one F_q-point.

use serde::Serialize;

use crate::algebra::{det3, find_roots, monomials, Embedding, Fe, Gf, Matrix, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SixPointData {
    pub q: u64,
    pub base: Gf,
    /// F_{q^3}, holding the points.
    pub ext: Gf,
    pub a: Fe,
    /// Scale factor for the second orbit; `None` for the fixed q = 3 data.
    pub k: Option<Fe>,
    pub points: [Vec<Fe>; 6],
    /// Common point of the lines p1p4, p2p5, p3p6, over F_q.
    pub concurrency: Vec<Fe>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Indices (0-based) of three collinear points.
    Collinear([usize; 3]),
    /// Rank of the conic evaluation matrix, below 6.
    OnConic(usize),
}

/// Certificate that the six points are in general position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralPosition {
    pub determinants_checked: usize,
    pub conic_rank: usize,
}

impl SixPointData {
    /// Frobenius of degree q applied to a point of P^2(F_{q^3}).
    fn frob(&self, p: &[Fe], times: u32) -> Vec<Fe> {
        p.iter().map(|&c| self.ext.frobenius(c, self.base.degree() * times)).collect()
    }

    /// The scalar a^(2q+1) - a^(q+2), which must lie outside F_q.
    pub fn separating_value(ext: &Gf, q: u64, a: Fe) -> Fe {
        let q = q as u128;
        ext.sub(ext.pow(a, 2 * q + 1), ext.pow(a, q + 2))
    }
}

fn in_base(base: &Gf, ext: &Gf, a: Fe) -> bool {
    ext.in_subfield(a, base.degree())
}

/// Deterministic parameters: for q > 3 the least k in F_q \ {0, 1, -1} and
/// the least a in F_{q^3} with a^(2q+1) - a^(q+2) outside F_q; for q = 3 the
/// least root of a^3 = a + 1 and the fixed point set that goes with it.
pub fn choose_parameters(q: u64) -> Result<SixPointData> {
    let base = Gf::with_order(q)?;
    if q < 3 {
        return Err(Error::RefusedImpossible(format!("no six-point data of this kind over F_{q}")));
    }
    let ext = base.extension(3)?;
    let emb = Embedding::new(&base, &ext)?;
    let pt = |x: Fe, y: Fe| vec![x, y, ext.one()];
    let pw = |a: Fe, e: u128| ext.pow(a, e);
    if q == 3 {
        let poly = UniPoly::new(&ext, vec![ext.from_int(-1), ext.from_int(-1), Fe::ZERO, ext.one()]);
        let mut roots = find_roots(&poly)?;
        roots.sort();
        let a = roots[0];
        let points = [
            pt(pw(a, 2), a),
            pt(pw(a, 6), pw(a, 3)),
            pt(pw(a, 18), pw(a, 9)),
            pt(pw(a, 4), a),
            pt(pw(a, 12), pw(a, 3)),
            pt(pw(a, 10), pw(a, 9)),
        ];
        let concurrency = vec![base.one(), Fe::ZERO, Fe::ZERO];
        return Ok(SixPointData { q, base, ext, a, k: None, points, concurrency });
    }
    let minus_one = base.from_int(-1);
    let k = base
        .elements()
        .find(|&k| !k.is_zero() && k != base.one() && k != minus_one)
        .ok_or_else(|| Error::Verification(format!("F_{q} has no element outside {{0, 1, -1}}")))?;
    let a = ext
        .elements()
        .find(|&a| !in_base(&base, &ext, SixPointData::separating_value(&ext, q, a)))
        .ok_or_else(|| Error::Verification("no a with a^(2q+1) - a^(q+2) outside F_q".into()))?;
    let ke = emb.apply(k);
    let q1 = q as u128;
    let orbit = [a, pw(a, q1), pw(a, q1 * q1)];
    let first: Vec<Vec<Fe>> = orbit.iter().map(|&b| pt(ext.square(b), b)).collect();
    let second: Vec<Vec<Fe>> = orbit.iter().map(|&b| pt(ext.mul(ke, ext.square(b)), ext.mul(ke, b))).collect();
    let points = [
        first[0].clone(),
        first[1].clone(),
        first[2].clone(),
        second[0].clone(),
        second[1].clone(),
        second[2].clone(),
    ];
    let concurrency = vec![Fe::ZERO, Fe::ZERO, base.one()];
    Ok(SixPointData { q, base, ext, a, k: Some(k), points, concurrency })
}

/// No three points collinear (all 20 determinants) and no conic through all
/// six (rank 6 of the conic evaluation matrix).
pub fn general_position(data: &SixPointData) -> std::result::Result<GeneralPosition, Violation> {
    let f = &data.ext;
    let p = &data.points;
    let mut checked = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                checked += 1;
                if det3(f, &p[i], &p[j], &p[k]).is_zero() {
                    return Err(Violation::Collinear([i, j, k]));
                }
            }
        }
    }
    let rank = conic_rank(f, p);
    if rank < 6 {
        return Err(Violation::OnConic(rank));
    }
    Ok(GeneralPosition { determinants_checked: checked, conic_rank: rank })
}

pub fn conic_rank(f: &Gf, points: &[Vec<Fe>]) -> usize {
    let mons = monomials(3, 2);
    let rows: Vec<Vec<Fe>> = points.iter().map(|p| eval_monomials(f, &mons, p)).collect();
    Matrix::from_rows(f, &rows).rank()
}

pub(crate) fn eval_monomials(f: &Gf, mons: &[Vec<u8>], p: &[Fe]) -> Vec<Fe> {
    mons.iter()
        .map(|m| m.iter().zip(p).fold(f.one(), |acc, (&e, &x)| f.mul(acc, f.pow(x, e as u128))))
        .collect()
}

/// Checks the structural claims: two Frobenius orbits, and the three lines
/// p_i p_{i+3} passing through the concurrency point.
pub fn check_structure(data: &SixPointData) -> Result<()> {
    let f = &data.ext;
    let p = &data.points;
    for (i, j) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
        if data.frob(&p[i], 1) != p[j] {
            return Err(Error::Verification(format!("p{} is not the Frobenius image of p{}", j + 1, i + 1)));
        }
    }
    let emb = Embedding::new(&data.base, f)?;
    let c: Vec<Fe> = data.concurrency.iter().map(|&x| emb.apply(x)).collect();
    for i in 0..3 {
        if !det3(f, &p[i], &p[i + 3], &c).is_zero() {
            return Err(Error::Verification(format!("the line p{}p{} misses the concurrency point", i + 1, i + 4)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q3_data_matches_the_fixed_points() {
        let d = choose_parameters(3).unwrap();
        let f = &d.ext;
        let a = d.a;
        assert_eq!(f.pow(a, 3), f.add(a, f.one()));
        check_structure(&d).unwrap();
        let g = general_position(&d).unwrap();
        assert_eq!(g, GeneralPosition { determinants_checked: 20, conic_rank: 6 });
        // det(p1, p2, p6) = a^5 (a^2 - 1)^2 (a^2 + 1)(a^2 + a + 1)
        let one = f.one();
        let a2 = f.square(a);
        let expected = [
            f.pow(a, 5),
            f.square(f.sub(a2, one)),
            f.add(a2, one),
            f.add(f.add(a2, a), one),
        ]
        .into_iter()
        .fold(one, |x, y| f.mul(x, y));
        assert_eq!(det3(f, &d.points[0], &d.points[1], &d.points[5]), expected);
        // det(p4, p5, p3) = a^9 (a - 1)^2
        let expected = f.mul(f.pow(a, 9), f.square(f.sub(a, one)));
        assert_eq!(det3(f, &d.points[3], &d.points[4], &d.points[2]), expected);
    }

    #[test]
    fn larger_q_data_is_in_general_position() {
        for q in [5, 7, 9] {
            let d = choose_parameters(q).unwrap();
            check_structure(&d).unwrap();
            general_position(&d).unwrap();
            assert!(!d.ext.in_subfield(SixPointData::separating_value(&d.ext, q, d.a), d.base.degree()));
        }
        let d5 = choose_parameters(5).unwrap();
        assert!(matches!(d5.k.map(|k| k.index()), Some(2) | Some(3)));
    }

    #[test]
    fn base_field_elements_never_separate() {
        let d = choose_parameters(5).unwrap();
        let e = Embedding::new(&d.base, &d.ext).unwrap();
        for a in d.base.elements() {
            let v = SixPointData::separating_value(&d.ext, 5, e.apply(a));
            assert!(v.is_zero());
        }
    }
}
