//! Curves y^2 = x^3 + a2 x^2 + a4 x + a6 in odd characteristic: point
//! enumeration, Weil data, torsion, and the search by trace.

use serde::Serialize;

use crate::algebra::{Embedding, Fe, Form, Gf, UniPoly};
use crate::error::{Error, Result};

use super::curve::{CurveWithBase, Point};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weierstrass {
    field: Gf,
    pub a2: Fe,
    pub a4: Fe,
    pub a6: Fe,
}

/// Largest group this module will enumerate.
pub const ENUMERATION_LIMIT: u64 = 20_000_000;

impl Weierstrass {
    pub fn new(field: &Gf, a2: Fe, a4: Fe, a6: Fe) -> Result<Weierstrass> {
        if !field.is_odd() {
            return Err(Error::Unsupported("Weierstrass models here need odd characteristic".into()));
        }
        let w = Weierstrass { field: field.clone(), a2, a4, a6 };
        if !w.cubic().is_squarefree() || w.cubic().degree() != Some(3) {
            return Err(Error::Degenerate("x^3 + a2 x^2 + a4 x + a6 has a repeated root".into()));
        }
        Ok(w)
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    fn cubic(&self) -> UniPoly {
        UniPoly::new(&self.field, vec![self.a6, self.a4, self.a2, self.field.one()])
    }

    /// y^2 z - x^3 - a2 x^2 z - a4 x z^2 - a6 z^3.
    pub fn form(&self) -> Form {
        let f = &self.field;
        let mut c = Form::zero(f, 3, 3);
        let n = |a: Fe| f.neg(a);
        for (e, v) in [
            ([0u8, 2, 1], f.one()),
            ([3, 0, 0], n(f.one())),
            ([2, 0, 1], n(self.a2)),
            ([1, 0, 2], n(self.a4)),
            ([0, 0, 3], n(self.a6)),
        ] {
            c.set_coeff(&e, v).expect("cubic monomial");
        }
        c
    }

    /// The flex at infinity.
    pub fn origin(&self) -> Point {
        vec![Fe::ZERO, self.field.one(), Fe::ZERO]
    }

    pub fn curve(&self) -> CurveWithBase {
        CurveWithBase::new(self.form(), &self.origin()).expect("Weierstrass curves are smooth")
    }

    pub fn curve_over(&self, ext: &Gf) -> Result<CurveWithBase> {
        self.curve().over(ext)
    }

    /// Coefficients (a2, a4, a6) in an extension field.
    pub fn coeffs_in(&self, ext: &Gf) -> Result<[Fe; 3]> {
        let e = Embedding::new(&self.field, ext)?;
        Ok([e.apply(self.a2), e.apply(self.a4), e.apply(self.a6)])
    }

    /// E(F_{q^d}): the origin first, then affine points by x and then y.
    pub fn points(&self, d: u32) -> Result<(Gf, Vec<Point>)> {
        let ext = self.field.extension(d)?;
        let q = ext.order();
        if q > ENUMERATION_LIMIT {
            return Err(Error::BudgetExceeded { needed: q as u128, budget: ENUMERATION_LIMIT as u128 });
        }
        let [a2, a4, a6] = self.coeffs_in(&ext)?;
        let mut out = vec![vec![Fe::ZERO, ext.one(), Fe::ZERO]];
        for x in ext.elements() {
            let x2 = ext.square(x);
            let r = ext.add(ext.add(ext.mul(x2, ext.add(x, a2)), ext.mul(a4, x)), a6);
            if let Some(y) = ext.sqrt(r)? {
                let mut ys = vec![y, ext.neg(y)];
                ys.sort();
                ys.dedup();
                for y in ys {
                    out.push(vec![x, y, ext.one()]);
                }
            }
        }
        Ok((ext, out))
    }

    pub fn count(&self, d: u32) -> Result<u128> {
        Ok(self.points(d)?.1.len() as u128)
    }

    pub fn weil_data(&self) -> Result<WeilData> {
        WeilData::from_count(self.field.order(), self.count(1)?)
    }

    /// Structure of E[n](F_{q^d}).
    pub fn torsion_profile(&self, n: u64, d: u32) -> Result<TorsionProfile> {
        let (ext, pts) = self.points(d)?;
        let e = self.curve_over(&ext)?;
        let mut size = 0u64;
        let mut exponent = 1u64;
        for p in &pts {
            if e.is_zero(&e.mul(n as i64, p)?) {
                let o = e.order_dividing(p, n)?.expect("n kills p");
                size += 1;
                exponent = lcm(exponent, o);
            }
        }
        Ok(TorsionProfile { n, d, n1: exponent, n2: size / exponent })
    }

    /// Points of exact order `n` in E(F_{q^d}), in enumeration order.
    pub fn points_of_order(&self, n: u64, d: u32) -> Result<(Gf, Vec<Point>)> {
        let (ext, pts) = self.points(d)?;
        let e = self.curve_over(&ext)?;
        let mut out = Vec::new();
        for p in pts {
            if e.is_zero(&e.mul(n as i64, &p)?) && e.order_dividing(&p, n)? == Some(n) {
                out.push(p);
            }
        }
        Ok((ext, out))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Weil polynomial f(t) = t^2 - b t + q and its cube f_3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilData {
    pub q: u64,
    pub b: i64,
    /// #E(F_q) = f(1).
    pub points: u128,
    /// f low to high: [q, -b, 1].
    pub f: [i128; 3],
    pub f3: [i128; 3],
}

impl WeilData {
    pub fn from_trace(q: u64, b: i64) -> Result<WeilData> {
        if (b as i128).pow(2) > 4 * q as i128 {
            return Err(Error::Verification(format!("|b| = {} violates the Hasse bound for q = {q}", b.abs())));
        }
        let (qi, bi) = (q as i128, b as i128);
        let b3 = bi.pow(3) - 3 * qi * bi;
        Ok(WeilData { q, b, points: (qi - bi + 1) as u128, f: [qi, -bi, 1], f3: [qi.pow(3), -b3, 1] })
    }

    pub fn from_count(q: u64, n: u128) -> Result<WeilData> {
        WeilData::from_trace(q, q as i64 + 1 - n as i64)
    }

    /// f_3(1) = #E(F_{q^3}).
    pub fn points_cubed(&self) -> i128 {
        self.f3.iter().sum()
    }
}

/// E[n](F_{q^d}) = Z/n1 x Z/n2 with n2 | n1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionProfile {
    pub n: u64,
    pub d: u32,
    pub n1: u64,
    pub n2: u64,
}

impl TorsionProfile {
    pub fn size(&self) -> u64 {
        self.n1 * self.n2
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }
}

/// Whether Deuring's sufficient condition gives a curve with trace b.
pub fn deuring_admissible(q: u64, b: i64) -> bool {
    if (b as i128).pow(2) > 4 * q as i128 {
        return false;
    }
    if gcd(q, b.unsigned_abs()) == 1 {
        return true;
    }
    let p = Gf::with_order(q).map(|f| f.p()).unwrap_or(0);
    p == 3 && (b as i128).pow(2) == 3 * q as i128
}

/// First curve y^2 = x^3 + a2 x^2 + a4 x + a6 with trace b, scanning
/// (a2, a4, a6) lexicographically in enumeration order.
pub fn search_curve_with_trace(q: u64, b: i64) -> Result<Weierstrass> {
    let f = Gf::with_order(q)?;
    if !f.is_odd() {
        return Err(Error::Unsupported("curve search is implemented for odd q".into()));
    }
    if !deuring_admissible(q, b) {
        return Err(Error::Invalid(format!(
            "trace {b} over F_{q} meets neither (q, b) = 1 nor b^2 = 3q in characteristic 3"
        )));
    }
    let target = (q as i64 + 1 - b) as u128;
    for a2 in f.elements() {
        for a4 in f.elements() {
            for a6 in f.elements() {
                if let Ok(w) = Weierstrass::new(&f, a2, a4, a6) {
                    if w.count(1)? == target {
                        return Ok(w);
                    }
                }
            }
        }
    }
    Err(Error::Verification(format!("no curve over F_{q} with trace {b}, contradicting Deuring's theorem")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_by_trace() {
        for (q, b, n) in [(3u64, 3i64, 1u128), (5, 1, 5), (7, 2, 6)] {
            let w = search_curve_with_trace(q, b).unwrap();
            assert_eq!(w.count(1).unwrap(), n);
            assert_eq!(w.weil_data().unwrap().b, b);
        }
        assert!(search_curve_with_trace(9, 3).is_err());
    }

    #[test]
    fn cubed_weil_polynomial_counts_points() {
        let w = search_curve_with_trace(7, 2).unwrap();
        let wd = w.weil_data().unwrap();
        assert_eq!(wd.points_cubed(), w.count(3).unwrap() as i128);
        assert_eq!(wd.f3[0], 343);
    }

    #[test]
    fn two_torsion_profile() {
        // y^2 = x^3 - x has full rational 2-torsion
        let f = Gf::prime(7).unwrap();
        let w = Weierstrass::new(&f, Fe::ZERO, f.from_int(-1), Fe::ZERO).unwrap();
        let t = w.torsion_profile(2, 1).unwrap();
        assert_eq!((t.n1, t.n2), (2, 2));
        assert_eq!(w.points_of_order(2, 1).unwrap().1.len(), 3);
    }

    #[test]
    fn deuring_condition() {
        assert!(deuring_admissible(9, 2));
        assert!(!deuring_admissible(9, 3));
        assert!(deuring_admissible(3, 3));
        assert!(!deuring_admissible(5, 5));
    }
}
