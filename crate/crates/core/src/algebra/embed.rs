//! Embeddings F_{p^a} -> F_{p^b} for a | b.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::field::{Fe, Gf};
use super::linalg::Matrix;
use super::poly::{find_roots, UniPoly};
use crate::error::{Error, Result};

/// A field homomorphism determined by the image of the source generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: Gf,
    dst: Gf,
    image_of_generator: Fe,
    /// Images of the power basis 1, g, g^2, ... of the source.
    basis: Vec<Fe>,
}

fn cache() -> &'static Mutex<HashMap<(u64, u32, u32), Embedding>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, u32), Embedding>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Embedding {
    /// The canonical embedding `src -> dst`.
    ///
    /// Without intermediate fields the generator goes to the smallest root of
    /// the source modulus in `dst`. Otherwise the map is the composite
    /// through the smallest intermediate degree, so that every chain
    /// `a | c | b` with `c` least commutes.
    pub fn new(src: &Gf, dst: &Gf) -> Result<Embedding> {
        if src.p() != dst.p() || dst.degree() % src.degree() != 0 {
            return Err(Error::FieldMismatch(src.literal(), dst.literal()));
        }
        let key = (src.p(), src.degree(), dst.degree());
        if let Some(e) = cache().lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let (a, b) = (src.degree(), dst.degree());
        let image = if a == b {
            src.generator()
        } else if a == 1 {
            Fe::ZERO
        } else if let Some(c) = (a + 1..b).find(|c| c % a == 0 && b % c == 0) {
            let mid = src.extension(c / a)?;
            let first = Embedding::new(src, &mid)?;
            let second = Embedding::new(&mid, dst)?;
            second.apply(first.image_of_generator)
        } else {
            let m: Vec<Fe> = src.modulus().iter().map(|&c| dst.from_int(c as i64)).collect();
            *find_roots(&UniPoly::new(dst, m))?
                .first()
                .ok_or_else(|| Error::Verification("source modulus has no root".into()))?
        };
        let mut basis = Vec::with_capacity(a as usize);
        let mut pw = dst.one();
        for _ in 0..a {
            basis.push(pw);
            pw = dst.mul(pw, image);
        }
        let e = Embedding { src: src.clone(), dst: dst.clone(), image_of_generator: image, basis };
        let mut guard = cache().lock().unwrap();
        Ok(guard.entry(key).or_insert(e).clone())
    }

    pub fn src(&self) -> &Gf {
        &self.src
    }

    pub fn dst(&self) -> &Gf {
        &self.dst
    }

    pub fn image_of_generator(&self) -> Fe {
        self.image_of_generator
    }

    pub fn apply(&self, a: Fe) -> Fe {
        let d = &self.dst;
        let mut acc = Fe::ZERO;
        for (c, &b) in self.src.coeffs(a).iter().zip(&self.basis) {
            if *c != 0 {
                acc = d.add(acc, d.mul(d.from_int(*c as i64), b));
            }
        }
        acc
    }

    /// The preimage of `b` when it lies in the image subfield.
    pub fn try_descend(&self, b: Fe) -> Option<Fe> {
        let d = &self.dst;
        if d.frobenius(b, self.src.degree()) != b {
            return None;
        }
        // Solve sum c_i basis_i = b over F_p, coordinatewise in dst.
        let fp = Gf::prime(d.p()).ok()?;
        let k = self.src.degree() as usize;
        let n = d.degree() as usize;
        let mut m = Matrix::zeros(&fp, n, k + 1);
        for (j, &bj) in self.basis.iter().enumerate() {
            for (i, c) in d.coeffs(bj).into_iter().enumerate() {
                m.set(i, j, Fe::from_index(c));
            }
        }
        for (i, c) in d.coeffs(b).into_iter().enumerate() {
            m.set(i, k, fp.neg(Fe::from_index(c)));
        }
        let ker = m.kernel();
        let v = ker.iter().find(|v| !v[k].is_zero())?;
        let scale = fp.inv(v[k]).ok()?;
        let coeffs: Vec<u64> = v[..k].iter().map(|&c| fp.mul(c, scale).index()).collect();
        self.src.from_coeffs(&coeffs).ok()
    }
}

/// Shorthand for `Embedding::new(src, dst)?.apply(a)`.
pub fn embed(src: &Gf, dst: &Gf, a: Fe) -> Result<Fe> {
    Ok(Embedding::new(src, dst)?.apply(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_is_root_of_source_modulus() {
        let f8 = Gf::new(2, 3).unwrap();
        let f64_ = Gf::new(2, 6).unwrap();
        let e = Embedding::new(&f8, &f64_).unwrap();
        let m = UniPoly::new(
            &f64_,
            f8.modulus().iter().map(|&c| f64_.from_int(c as i64)).collect(),
        );
        assert!(m.eval(e.image_of_generator()).is_zero());
    }

    #[test]
    fn homomorphism_on_all_pairs() {
        let src = Gf::new(3, 2).unwrap();
        let dst = Gf::new(3, 4).unwrap();
        let e = Embedding::new(&src, &dst).unwrap();
        for a in src.elements() {
            for b in src.elements() {
                assert_eq!(e.apply(src.add(a, b)), dst.add(e.apply(a), e.apply(b)));
                assert_eq!(e.apply(src.mul(a, b)), dst.mul(e.apply(a), e.apply(b)));
            }
        }
        assert_eq!(e.apply(src.one()), dst.one());
    }

    #[test]
    fn descend_round_trip_and_rejection() {
        let f3 = Gf::prime(3).unwrap();
        let f9 = Gf::new(3, 2).unwrap();
        let e = Embedding::new(&f3, &f9).unwrap();
        for a in f3.elements() {
            assert_eq!(e.try_descend(e.apply(a)), Some(a));
        }
        let f27 = Gf::new(3, 3).unwrap();
        let e3 = Embedding::new(&f3, &f27).unwrap();
        let roots = find_roots(&UniPoly::from_ints(&f27, &[-1, -1, 0, 1])).unwrap();
        for r in roots {
            assert_eq!(e3.try_descend(r), None);
        }
    }

    #[test]
    fn chain_through_least_intermediate_commutes() {
        for (p, a, c, b) in [(2u64, 1u32, 2u32, 4u32), (2, 2, 4, 8), (3, 3, 6, 12), (5, 1, 2, 6)] {
            let fa = Gf::new(p, a).unwrap();
            let fc = Gf::new(p, c).unwrap();
            let fb = Gf::new(p, b).unwrap();
            let ab = Embedding::new(&fa, &fb).unwrap();
            let ac = Embedding::new(&fa, &fc).unwrap();
            let cb = Embedding::new(&fc, &fb).unwrap();
            for x in fa.elements().take(200) {
                assert_eq!(ab.apply(x), cb.apply(ac.apply(x)), "p={p} {a}|{c}|{b}");
            }
        }
    }
}
