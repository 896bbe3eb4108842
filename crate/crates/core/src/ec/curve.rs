//! Smooth plane cubics with a chosen base point and the chord-tangent group
//! law renormalized at that point.

use crate::algebra::{proj, Embedding, Fe, Form, Gf};
use crate::error::{Error, Result};
use crate::surface::plane_cubic_is_smooth;

/// A projective point, normalized (first nonzero coordinate 1).
pub type Point = Vec<Fe>;

#[derive(Clone, Debug)]
pub struct CurveWithBase {
    form: Form,
    grad: Vec<Form>,
    base: Point,
}

impl CurveWithBase {
    /// Checks that `form` is a smooth plane cubic and `o` lies on it.
    pub fn new(form: Form, o: &[Fe]) -> Result<CurveWithBase> {
        if form.nvars() != 3 || form.degree() != 3 {
            return Err(Error::Invalid("expected a plane cubic".into()));
        }
        if !plane_cubic_is_smooth(&form)? {
            return Err(Error::Degenerate("the plane cubic is singular".into()));
        }
        let c = CurveWithBase::trusted(form, o);
        if !c.contains(&c.base) {
            return Err(Error::Invalid("base point is not on the curve".into()));
        }
        Ok(c)
    }

    fn trusted(form: Form, o: &[Fe]) -> CurveWithBase {
        let base = proj::normalize(form.field(), o);
        let grad = form.gradient();
        CurveWithBase { form, grad, base }
    }

    /// The same curve over an extension field.
    pub fn over(&self, ext: &Gf) -> Result<CurveWithBase> {
        let e = Embedding::new(self.field(), ext)?;
        let o: Vec<Fe> = self.base.iter().map(|&a| e.apply(a)).collect();
        Ok(CurveWithBase::trusted(self.form.embed(&e), &o))
    }

    pub fn field(&self) -> &Gf {
        self.form.field()
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn contains(&self, p: &[Fe]) -> bool {
        p.iter().any(|c| !c.is_zero()) && self.form.eval(p).is_zero()
    }

    fn check(&self, p: &[Fe]) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::Invalid("point is not on the curve".into()))
        }
    }

    fn dot_grad(&self, at: &[Fe], v: &[Fe]) -> Fe {
        let f = self.field();
        self.grad
            .iter()
            .zip(v)
            .fold(Fe::ZERO, |acc, (g, &vi)| f.add(acc, f.mul(g.eval(at), vi)))
    }

    /// Third intersection of the line through `a` and `b` (the tangent if
    /// they coincide) with the curve.
    pub fn third(&self, a: &[Fe], b: &[Fe]) -> Result<Point> {
        let f = self.field();
        let a = proj::normalize(f, a);
        let b = proj::normalize(f, b);
        let combo = |s: Fe, p: &[Fe], r: Fe, q: &[Fe]| -> Point {
            proj::normalize(f, &(0..3).map(|i| f.sub(f.mul(s, p[i]), f.mul(r, q[i]))).collect::<Vec<_>>())
        };
        if a != b {
            // C(u a + v b) = u v (c1 u + c2 v)
            let c1 = self.dot_grad(&a, &b);
            let c2 = self.dot_grad(&b, &a);
            if c1.is_zero() && c2.is_zero() {
                return Err(Error::Degenerate("line contained in the curve".into()));
            }
            return Ok(combo(c2, &a, c1, &b));
        }
        let l: Vec<Fe> = self.grad.iter().map(|g| g.eval(&a)).collect();
        if l.iter().all(|c| c.is_zero()) {
            return Err(Error::Degenerate("singular point".into()));
        }
        let r = (0..3)
            .map(|j| {
                let mut e = [Fe::ZERO; 3];
                e[j] = f.one();
                cross(f, &l, &e)
            })
            .find(|r| r.iter().any(|c| !c.is_zero()) && !proj::same_point(f, r, &a))
            .expect("the tangent line has two distinct points");
        // C(u a + v r) = v^2 (c2 u + c3 v)
        let c2 = self.dot_grad(&r, &a);
        let c3 = self.form.eval(&r);
        Ok(combo(c3, &a, c2, &r))
    }

    pub fn add(&self, a: &[Fe], b: &[Fe]) -> Result<Point> {
        self.check(a)?;
        self.check(b)?;
        let t = self.third(a, b)?;
        self.third(&self.base, &t)
    }

    pub fn neg(&self, a: &[Fe]) -> Result<Point> {
        self.check(a)?;
        let oo = self.third(&self.base, &self.base)?;
        self.third(a, &oo)
    }

    pub fn sub(&self, a: &[Fe], b: &[Fe]) -> Result<Point> {
        self.add(a, &self.neg(b)?)
    }

    pub fn mul(&self, n: i64, a: &[Fe]) -> Result<Point> {
        self.check(a)?;
        let mut acc = self.base.clone();
        let mut pw = proj::normalize(self.field(), a);
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.third(&self.base, &self.third(&acc, &pw)?)?;
            }
            k >>= 1;
            if k > 0 {
                pw = self.third(&self.base, &self.third(&pw, &pw)?)?;
            }
        }
        if n < 0 {
            self.neg(&acc)
        } else {
            Ok(acc)
        }
    }

    pub fn is_zero(&self, a: &[Fe]) -> bool {
        proj::normalize(self.field(), a) == self.base
    }

    /// Order of `a`, searched among the divisors of `bound`.
    pub fn order_dividing(&self, a: &[Fe], bound: u64) -> Result<Option<u64>> {
        for d in (1..=bound).filter(|d| bound % d == 0) {
            if self.is_zero(&self.mul(d as i64, a)?) {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }

    /// Sum of a hyperplane section: collinear P1, P2, P3 satisfy
    /// P1 + P2 + P3 = this point.
    pub fn hyperplane_sum(&self) -> Result<Point> {
        self.third(&self.base, &self.base)
    }

    /// Applies x -> x^(p^e) to the coordinates.
    pub fn frobenius(&self, a: &[Fe], e: u32) -> Point {
        proj::normalize(self.field(), &proj::frobenius_point(self.field(), a, e))
    }
}

pub(crate) fn cross(f: &Gf, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let m = |x: Fe, y: Fe| f.mul(x, y);
    vec![
        f.sub(m(a[1], b[2]), m(a[2], b[1])),
        f.sub(m(a[2], b[0]), m(a[0], b[2])),
        f.sub(m(a[0], b[1]), m(a[1], b[0])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ec::Weierstrass;

    /// Affine chord-tangent addition on y^2 = x^3 + a4 x + a6.
    fn affine_add(f: &Gf, a4: Fe, p: &[Fe], q: &[Fe]) -> Option<(Fe, Fe)> {
        let (x1, y1, x2, y2) = (p[0], p[1], q[0], q[1]);
        let lambda = if x1 != x2 {
            f.div(f.sub(y2, y1), f.sub(x2, x1)).unwrap()
        } else if y1 == y2 && !y1.is_zero() {
            f.div(f.add(f.mul(f.from_int(3), f.square(x1)), a4), f.mul(f.from_int(2), y1)).unwrap()
        } else {
            return None;
        };
        let x3 = f.sub(f.sub(f.square(lambda), x1), x2);
        let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
        Some((x3, y3))
    }

    #[test]
    fn group_law_matches_affine_formulas_over_f25() {
        let f = Gf::new(5, 2).unwrap();
        let (a4, a6) = (f.generator(), f.one());
        let w = Weierstrass::new(&f, Fe::ZERO, a4, a6).unwrap();
        let e = w.curve();
        let (_, pts) = w.points(1).unwrap();
        for p in pts.iter().skip(1) {
            for q in pts.iter().skip(1) {
                let sum = e.add(p, q).unwrap();
                match affine_add(&f, a4, p, q) {
                    None => assert!(e.is_zero(&sum)),
                    Some((x, y)) => assert_eq!(sum, proj::normalize(&f, &[x, y, f.one()])),
                }
            }
        }
        let o = w.origin();
        assert_eq!(e.hyperplane_sum().unwrap(), o);
        assert!(e.is_zero(&e.mul(pts.len() as i64, &pts[3]).unwrap()));
    }
}
