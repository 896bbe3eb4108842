//! Curves with prescribed torsion turned into branch data (C, W) for the
//! Eckardt constructions and into plane cubics f for cyclic surfaces f + t^3.
//! Every hypothesis a recipe relies on is checked numerically; a failure is
//! reported, never patched over.

use crate::algebra::{det3, proj, Embedding, Fe, Form, Gf};
use crate::error::{Error, Result};
use crate::surface::{build_from_branch_data, quadratic_twist, EckardtForm};

use super::curve::Point;
use super::embedding::{embed_by_divisor, Divisor};
use super::weierstrass::{deuring_admissible, search_curve_with_trace, TorsionProfile, Weierstrass, WeilData};

#[derive(Clone, Debug)]
pub struct BranchRecipe {
    pub curve: Weierstrass,
    pub weil: WeilData,
    /// Prime order of the torsion point spanning W (c11/c12 only).
    pub ell: Option<u64>,
    /// Branch cubic C and line W over F_q.
    pub c: Form,
    pub w: Form,
    pub form: EckardtForm,
}

#[derive(Clone, Debug)]
pub struct CyclicRecipe {
    pub curve: Weierstrass,
    pub weil: WeilData,
    /// Field F_{q^3} holding P and its orbit.
    pub ext: Gf,
    /// Point of order 9 with 3P = Q.
    pub p: Point,
    /// Rational 3-torsion point Q, in base-field coordinates.
    pub q_point: Point,
    /// Whether P had to be shifted by a non-rational 3-torsion point.
    pub shifted: bool,
    /// Plane cubic f of the cyclic surface f + t^3.
    pub f: Form,
    /// Images of P, F(P), F^2(P) on {f = 0}.
    pub orbit: Vec<Point>,
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(what.to_string()))
    }
}

fn require_odd(q: u64) -> Result<Gf> {
    let f = Gf::with_order(q)?;
    if !f.is_odd() {
        return Err(Error::RefusedScope(format!("these constructions need odd q, got {q}")));
    }
    Ok(f)
}

/// The line through three collinear points of P^2(ext), descended to `base`.
fn descended_line(base: &Gf, ext: &Gf, pts: &[Point]) -> Result<Form> {
    require(pts.len() == 3, "expected three points")?;
    require(pts[0] != pts[1] && pts[1] != pts[2] && pts[0] != pts[2], "points are not distinct")?;
    require(det3(ext, &pts[0], &pts[1], &pts[2]).is_zero(), "points are not collinear")?;
    let l = proj::line_through(ext, &pts[0], &pts[1]);
    let e = Embedding::new(base, ext)?;
    let coeffs: Option<Vec<Fe>> = l.iter().map(|&c| e.try_descend(c)).collect();
    let coeffs = coeffs.ok_or_else(|| Error::Verification("the line is not defined over the base field".into()))?;
    Ok(Form::linear(base, &coeffs))
}

fn expect_profile(w: &Weierstrass, n: u64, d: u32, n1: u64, n2: u64) -> Result<TorsionProfile> {
    let t = w.torsion_profile(n, d)?;
    require(
        (t.n1, t.n2) == (n1, n2),
        &format!("E[{n}](F_q^{d}) is Z/{} x Z/{}, expected Z/{n1} x Z/{n2}", t.n1, t.n2),
    )?;
    Ok(t)
}

/// Branch data for type c13: a curve with b = 1, embedded by 3O, and W the
/// line through its three non-trivial 2-torsion points.
pub fn recipe_c13(q: u64) -> Result<BranchRecipe> {
    let base = require_odd(q)?;
    let curve = search_curve_with_trace(q, 1)?;
    let weil = curve.weil_data()?;
    expect_profile(&curve, 4, 2, 1, 1)?;
    expect_profile(&curve, 2, 3, 2, 2)?;
    expect_profile(&curve, 4, 3, 2, 2)?;
    require(!curve.points_of_order(4, 6)?.1.is_empty(), "no point of order 4 over F_q^6")?;
    require(weil.points_cubed().rem_euclid(8) == 4, "f_3(1) is not 4 mod 8")?;
    let (ext, two) = curve.points_of_order(2, 3)?;
    let w = descended_line(&base, &ext, &two)?;
    let c = curve.form();
    let form = build_from_branch_data(&c, &w)?;
    Ok(BranchRecipe { curve, weil, ell: None, c, w, form })
}

fn smallest_odd_prime_factor_coprime_to(n: u64, q: u64) -> Option<u64> {
    (3..=n).step_by(2).find(|&l| n % l == 0 && (2..l).all(|d| l % d != 0) && q % l != 0)
}

/// Branch data for the pair {c11, c12}: W is the line through the Frobenius
/// orbit of a point of prime order l over F_{q^3}. Returns the surface built
/// from (C, W) and its quadratic twist; which one is c11 is read off by
/// counting.
pub fn recipe_c11_c12(q: u64) -> Result<(BranchRecipe, EckardtForm)> {
    let base = require_odd(q)?;
    let (b, ell) = if q == 3 {
        (3, 7)
    } else {
        let l = smallest_odd_prime_factor_coprime_to(q * q + 3, q)
            .ok_or_else(|| Error::Verification(format!("q^2 + 3 has no odd prime factor prime to q = {q}")))?;
        (1, l)
    };
    let curve = search_curve_with_trace(q, b)?;
    let weil = curve.weil_data()?;
    require(weil.points_cubed() % ell as i128 == 0, "l does not divide f_3(1)")?;
    require(weil.points % ell as u128 != 0, "l divides #E(F_q)")?;
    let (ext, pts) = curve.points_of_order(ell, 3)?;
    let qpt = pts.first().ok_or_else(|| Error::Verification(format!("no point of order {ell} over F_q^3")))?;
    let e = curve.curve_over(&ext)?;
    let k = base.degree();
    let orbit = vec![qpt.clone(), e.frobenius(qpt, k), e.frobenius(qpt, 2 * k)];
    let sum = e.add(&e.add(&orbit[0], &orbit[1])?, &orbit[2])?;
    require(e.is_zero(&sum), "Q + F(Q) + F^2(Q) is not zero")?;
    let w = descended_line(&base, &ext, &orbit)?;
    let c = curve.form();
    let form = build_from_branch_data(&c, &w)?;
    let twist = quadratic_twist(&form)?;
    Ok((BranchRecipe { curve, weil, ell: Some(ell), c, w, form }, twist))
}

/// Trace b for the cyclic recipe: 1 - b + q = 6 mod 9, Deuring-admissible,
/// scanned by increasing |b| with the positive value first.
pub fn cyclic_trace(q: u64) -> Result<i64> {
    let bound = (4 * q as i64).isqrt();
    (0..=bound)
        .flat_map(|m| if m == 0 { vec![0] } else { vec![m, -m] })
        .find(|&b| (1 - b + q as i64).rem_euclid(9) == 6 && deuring_admissible(q, b))
        .ok_or_else(|| Error::Verification(format!("no admissible trace for q = {q}")))
}

/// Plane cubic f such that f + t^3 has type c14, for q = 1 mod 6.
pub fn recipe_c14(q: u64) -> Result<CyclicRecipe> {
    if q % 6 != 1 {
        return Err(Error::RefusedScope(format!("the cyclic construction assumes q = 1 mod 6, got q = {q}")));
    }
    let base = require_odd(q)?;
    let b = cyclic_trace(q)?;
    let curve = search_curve_with_trace(q, b)?;
    let weil = curve.weil_data()?;
    let (ext, nine) = curve.points_of_order(9, 3)?;
    let e = curve.curve_over(&ext)?;
    let k = base.degree();
    let frob = |p: &Point| e.frobenius(p, k);
    let mut p = nine.first().cloned().ok_or_else(|| Error::Verification("no point of order 9 over F_q^3".into()))?;
    let relations = |p: &Point| -> Result<(Point, Point)> {
        let q1 = e.sub(&frob(p), p)?;
        require(e.is_zero(&e.mul(3, &q1)?), "3Q' is not zero for Q' = F(P) - P")?;
        let qq = e.sub(&frob(&q1), &q1)?;
        Ok((q1, qq))
    };
    let (_, mut qq) = relations(&p)?;
    let mut shifted = false;
    if e.is_zero(&qq) {
        let (_, three) = curve.points_of_order(3, 3)?;
        let q2 = three
            .iter()
            .find(|r| frob(r) != **r)
            .ok_or_else(|| Error::Verification("every 3-torsion point over F_q^3 is Frobenius-fixed".into()))?;
        p = e.add(&p, q2)?;
        qq = relations(&p)?.1;
        shifted = true;
    }
    require(!e.is_zero(&qq), "Q = F(Q') - Q' is zero")?;
    require(frob(&qq) == qq, "Q is not rational")?;
    require(e.is_zero(&e.mul(3, &qq)?), "Q is not 3-torsion")?;
    require(e.mul(3, &p)? == qq, "3P != Q")?;
    let emb = Embedding::new(&base, &ext)?;
    let q_point: Point = qq.iter().map(|&c| emb.try_descend(c)).collect::<Option<_>>().expect("Q is rational");

    let model = embed_by_divisor(&curve, Divisor::TwoOPlus(q_point.clone()))?;
    let f = model.image.clone();
    let img = model.image_curve(&ext)?;
    let o_img = model.map_in(&base, &curve.origin())?;
    let q_img = model.map_in(&base, &q_point)?;
    require(o_img == vec![base.one(), Fe::ZERO, Fe::ZERO], "O does not map to (1:0:0)")?;
    require(q_img == vec![Fe::ZERO, base.one(), Fe::ZERO], "Q does not map to (0:1:0)")?;
    let orbit_src = [p.clone(), frob(&p), frob(&frob(&p))];
    let orbit: Vec<Point> = orbit_src.iter().map(|r| model.map_in(&ext, r)).collect::<Result<_>>()?;
    require(orbit[1] == img.frobenius(&orbit[0], k), "the embedding does not commute with Frobenius")?;
    let s = img.hyperplane_sum()?;
    for r in &orbit {
        require(img.contains(r), "image point is off the fitted cubic")?;
        require(img.mul(3, r)? == s, "orbit point is not an inflection point")?;
    }
    require(orbit[0] != orbit[1] && orbit[1] != orbit[2] && orbit[0] != orbit[2], "orbit of P has length < 3")?;
    require(!det3(&ext, &orbit[0], &orbit[1], &orbit[2]).is_zero(), "the three inflection points are collinear")?;
    Ok(CyclicRecipe { curve, weil, ext, p, q_point, shifted, f, orbit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_trace_choices() {
        assert_eq!(cyclic_trace(7).unwrap(), 2);
        assert_eq!(cyclic_trace(13).unwrap(), -1);
    }

    #[test]
    fn ell_choices() {
        assert_eq!(smallest_odd_prime_factor_coprime_to(28, 5), Some(7));
        assert_eq!(smallest_odd_prime_factor_coprime_to(52, 7), Some(13));
        assert_eq!(smallest_odd_prime_factor_coprime_to(84, 9), Some(7));
    }

    #[test]
    fn c13_over_f3_and_f5() {
        for q in [3, 5] {
            let r = recipe_c13(q).unwrap();
            assert_eq!(r.weil.b, 1);
            assert_eq!(r.curve.count(1).unwrap(), q as u128);
        }
    }

    #[test]
    fn c11_c12_over_f3() {
        let (r, twist) = recipe_c11_c12(3).unwrap();
        assert_eq!((r.weil.b, r.ell), (3, Some(7)));
        assert_eq!(r.weil.points_cubed(), 28);
        assert_ne!(r.form, twist);
    }

    #[test]
    fn c14_over_f7() {
        let r = recipe_c14(7).unwrap();
        assert_eq!(r.weil.b, 2);
        assert_eq!(r.orbit.len(), 3);
        assert!(matches!(recipe_c14(5), Err(Error::RefusedScope(_))));
    }
}
