//! Plane models of a Weierstrass curve from degree-3 divisors.
//!
//! For D = 3O the model is the Weierstrass cubic itself. For D = 2O + Q the
//! Riemann-Roch space has basis {1, x, h} with h = (y + y_Q) / (x - x_Q),
//! whose only poles are simple ones at O and Q; the image cubic is recovered
//! from sampled image points by linear algebra.

use crate::algebra::{monomials, proj, Embedding, Fe, Form, Gf, Matrix};
use crate::error::{Error, Result};

use super::curve::{CurveWithBase, Point};
use super::weierstrass::Weierstrass;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Divisor {
    ThreeO,
    /// 2O + Q for a rational point Q != O with 2Q != O.
    TwoOPlus(Point),
}

#[derive(Clone, Debug)]
pub struct DivisorEmbedding {
    curve: Weierstrass,
    divisor: Divisor,
    /// The image cubic over the base field.
    pub image: Form,
}

/// Minimum number of image points used to fit the image cubic.
const MIN_SAMPLES: usize = 12;

impl DivisorEmbedding {
    pub fn new(curve: &Weierstrass, divisor: Divisor) -> Result<DivisorEmbedding> {
        let f = curve.field().clone();
        if let Divisor::TwoOPlus(q) = &divisor {
            let e = curve.curve();
            if q.len() != 3 || !e.contains(q) || e.is_zero(q) {
                return Err(Error::Invalid("Q must be a rational point other than O".into()));
            }
            if q[2].is_zero() {
                return Err(Error::Invalid("Q must not be O".into()));
            }
            if q[1].is_zero() {
                return Err(Error::Invalid("Q must not be 2-torsion".into()));
            }
        }
        let mut emb = DivisorEmbedding { curve: curve.clone(), divisor, image: curve.form() };
        if emb.divisor == Divisor::ThreeO {
            return Ok(emb);
        }
        // Sample over the first extension with enough points.
        for d in 1..=6 {
            let (ext, pts) = curve.points(d)?;
            if pts.len() < MIN_SAMPLES + 4 {
                continue;
            }
            let images: Vec<Point> = pts.iter().map(|p| emb.map_in(&ext, p)).collect::<Result<_>>()?;
            let mons = monomials(3, 3);
            let rows: Vec<Vec<Fe>> = images
                .iter()
                .map(|p| {
                    mons.iter()
                        .map(|m| (0..3).fold(ext.one(), |acc, i| ext.mul(acc, ext.pow(p[i], m[i] as u128))))
                        .collect()
                })
                .collect();
            let kernel = Matrix::from_rows(&ext, &rows).kernel();
            if kernel.len() != 1 {
                return Err(Error::Verification(format!(
                    "image cubic not unique: kernel of dimension {} from {} points",
                    kernel.len(),
                    images.len()
                )));
            }
            let over_ext = Form::new(&ext, 3, 3, kernel[0].clone())?.normalized();
            let e = Embedding::new(&f, &ext)?;
            emb.image = over_ext
                .descend(&e)
                .ok_or_else(|| Error::Verification("image cubic is not defined over the base field".into()))?;
            return Ok(emb);
        }
        Err(Error::Verification("too few points to fit the image cubic".into()))
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    /// The image curve over `ext`, based at the image of O.
    pub fn image_curve(&self, ext: &Gf) -> Result<CurveWithBase> {
        let o = self.map_in(self.curve.field(), &self.curve.origin())?;
        CurveWithBase::new(self.image.clone(), &o)?.over(ext)
    }

    /// Image of a point of E(F_{q^d}) given with coordinates in `ext`.
    pub fn map_in(&self, ext: &Gf, p: &[Fe]) -> Result<Point> {
        match &self.divisor {
            Divisor::ThreeO => Ok(proj::normalize(ext, p)),
            Divisor::TwoOPlus(q) => {
                let [a2, a4, _] = self.curve.coeffs_in(ext)?;
                let q = vec_over(q, self.curve.field(), ext)?;
                let zq = ext.inv(q[2])?;
                let (xq, yq) = (ext.mul(q[0], zq), ext.mul(q[1], zq));
                if p[2].is_zero() {
                    return Ok(vec![ext.one(), Fe::ZERO, Fe::ZERO]);
                }
                let zi = ext.inv(p[2])?;
                let (x, y) = (ext.mul(p[0], zi), ext.mul(p[1], zi));
                if x == xq {
                    if y == yq {
                        return Ok(vec![Fe::ZERO, ext.one(), Fe::ZERO]);
                    }
                    // P = -Q: h = (3x^2 + 2 a2 x + a4) / (-2 y_Q).
                    let num = ext.add(ext.add(ext.mul(ext.from_int(3), ext.square(x)), ext.mul(ext.from_int(2), ext.mul(a2, x))), a4);
                    let h = ext.div(num, ext.neg(ext.mul(ext.from_int(2), yq)))?;
                    return Ok(proj::normalize(ext, &[x, h, ext.one()]));
                }
                let h = ext.div(ext.add(y, yq), ext.sub(x, xq))?;
                Ok(proj::normalize(ext, &[x, h, ext.one()]))
            }
        }
    }
}

pub(crate) fn vec_over(v: &[Fe], src: &Gf, dst: &Gf) -> Result<Vec<Fe>> {
    let e = Embedding::new(src, dst)?;
    Ok(v.iter().map(|&a| e.apply(a)).collect())
}

pub fn embed_by_divisor(curve: &Weierstrass, divisor: Divisor) -> Result<DivisorEmbedding> {
    DivisorEmbedding::new(curve, divisor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::det3;
    use crate::ec::search_curve_with_trace;

    fn rational_three_torsion(w: &Weierstrass) -> Point {
        let (_, pts) = w.points_of_order(3, 1).unwrap();
        pts[0].clone()
    }

    #[test]
    fn two_o_plus_q_model_is_injective_and_on_the_image() {
        let w = search_curve_with_trace(7, 2).unwrap();
        let q = rational_three_torsion(&w);
        let m = embed_by_divisor(&w, Divisor::TwoOPlus(q)).unwrap();
        for d in 1..=3 {
            let (ext, pts) = w.points(d).unwrap();
            let img = m.image_curve(&ext).unwrap();
            let mut images: Vec<Point> = pts.iter().map(|p| m.map_in(&ext, p).unwrap()).collect();
            assert!(images.iter().all(|p| img.contains(p)));
            images.sort();
            images.dedup();
            assert_eq!(images.len(), pts.len());
        }
    }

    #[test]
    fn collinear_images_sum_to_the_hyperplane_point() {
        let w = search_curve_with_trace(7, 2).unwrap();
        let q = rational_three_torsion(&w);
        let m = embed_by_divisor(&w, Divisor::TwoOPlus(q.clone())).unwrap();
        let (ext, pts) = w.points(2).unwrap();
        let img = m.image_curve(&ext).unwrap();
        let s = img.hyperplane_sum().unwrap();
        // The group law is transported: images of P1, P2, P3 with
        // P1 + P2 + P3 = Q in E are collinear on the image.
        let e = w.curve_over(&ext).unwrap();
        let qe = vec_over(&q, w.field(), &ext).unwrap();
        let mut checked = 0;
        for a in pts.iter().skip(1).take(12) {
            for b in pts.iter().skip(13).take(12) {
                let c = e.sub(&qe, &e.add(a, b).unwrap()).unwrap();
                let (ia, ib, ic) = (m.map_in(&ext, a).unwrap(), m.map_in(&ext, b).unwrap(), m.map_in(&ext, &c).unwrap());
                if ia == ib || ib == ic || ia == ic {
                    continue;
                }
                assert!(det3(&ext, &ia, &ib, &ic).is_zero());
                assert_eq!(img.add(&img.add(&ia, &ib).unwrap(), &ic).unwrap(), s);
                checked += 1;
            }
        }
        assert!(checked > 50);
    }

    #[test]
    fn three_o_is_the_weierstrass_model() {
        let w = search_curve_with_trace(5, 1).unwrap();
        let m = embed_by_divisor(&w, Divisor::ThreeO).unwrap();
        assert_eq!(m.image, w.form());
        assert!(embed_by_divisor(&w, Divisor::TwoOPlus(w.origin())).is_err());
    }
}
