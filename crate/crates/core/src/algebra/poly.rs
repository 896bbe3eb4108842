//! Univariate polynomials over a [`Gf`], with root finding by
//! gcd with `x^Q - x` followed by Cantor-Zassenhaus splitting.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Fe, Gf};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    field: Gf,
    coeffs: Vec<Fe>,
}

impl UniPoly {
    /// Builds a polynomial from coefficients listed low to high.
    pub fn new(field: &Gf, coeffs: Vec<Fe>) -> UniPoly {
        let mut p = UniPoly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    pub fn from_ints(field: &Gf, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Gf) -> UniPoly {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Gf, c: Fe) -> UniPoly {
        UniPoly::new(field, vec![c])
    }

    pub fn x(field: &Gf) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn eval(&self, a: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: Fe) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(f);
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(f, out)
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn derivative(&self) -> UniPoly {
        let f = &self.field;
        UniPoly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = f.inv(d.lead())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(f), self.clone()));
        }
        let mut q = vec![Fe::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = f.sub(r[idx], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        Ok((UniPoly::new(f, q), UniPoly::new(f, r)))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &UniPoly, m: &UniPoly) -> UniPoly {
        self.mul(other).rem(m).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, mut e: u128, m: &UniPoly) -> UniPoly {
        let mut r = UniPoly::constant(&self.field, self.field.one()).rem(m).expect("nonzero modulus");
        let mut b = self.rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_mod(&b, m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_mod(&b, m);
            }
        }
        r
    }

    /// Applies `f` coefficientwise, e.g. to move into an extension field.
    pub fn map(&self, field: &Gf, mut g: impl FnMut(Fe) -> Fe) -> UniPoly {
        UniPoly::new(field, self.coeffs.iter().map(|&c| g(c)).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                if d.is_zero() {
                    return false;
                }
                self.gcd(&d).degree() == Some(0)
            }
        }
    }

    /// Distinct-degree factorization of a squarefree polynomial: pairs
    /// `(d, g_d)` where `g_d` is the product of all monic irreducible factors
    /// of degree `d`. Only nontrivial `g_d` are listed.
    pub fn distinct_degree_factors(&self) -> Result<Vec<(usize, UniPoly)>> {
        if self.is_zero() {
            return Err(Error::Invalid("distinct-degree factorization of zero".into()));
        }
        let q = self.field.order() as u128;
        let mut f = self.monic();
        let x = UniPoly::x(&self.field);
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut d = 0usize;
        while let Some(deg) = f.degree() {
            if deg == 0 {
                break;
            }
            d += 1;
            if 2 * d > deg {
                out.push((deg, f.clone()));
                break;
            }
            h = h.pow_mod(q, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree().unwrap_or(0) > 0 {
                f = f.divrem(&g)?.0;
                h = h.rem(&f)?;
                out.push((d, g));
            }
        }
        Ok(out)
    }

    /// Degree of the splitting field over the coefficient field: the lcm of
    /// the degrees of the irreducible factors (of the squarefree part).
    pub fn splitting_degree(&self) -> Result<usize> {
        let sf = self.squarefree_part()?;
        Ok(sf
            .distinct_degree_factors()?
            .iter()
            .fold(1usize, |acc, (d, _)| lcm(acc, *d)))
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::Invalid("squarefree part of zero".into()));
        }
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(f);
        }
        let d = f.derivative();
        if d.is_zero() {
            // f = g(x^p): take the p-th root of every coefficient.
            let p = self.field.p() as usize;
            let k = self.field.degree();
            let root = |c: Fe| self.field.frobenius(c, k - 1);
            let g = UniPoly::new(
                &self.field,
                f.coeffs.iter().step_by(p).map(|&c| root(c)).collect(),
            );
            return g.squarefree_part();
        }
        let g = f.gcd(&d);
        let mut core = f.divrem(&g)?.0;
        // Factors of multiplicity divisible by p survive in g without showing
        // up in core; fold them back in.
        let mut rest = g;
        loop {
            let c = rest.gcd(&core);
            if c.degree() == Some(0) {
                break;
            }
            rest = rest.divrem(&c)?.0;
        }
        if rest.degree().unwrap_or(0) > 0 {
            let extra = rest.squarefree_part()?;
            core = core.mul(&extra.divrem(&extra.gcd(&core))?.0);
        }
        Ok(core.monic())
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn seed_for(f: &UniPoly) -> u64 {
    let mut h = DefaultHasher::new();
    f.field.p().hash(&mut h);
    f.field.degree().hash(&mut h);
    for c in &f.coeffs {
        c.index().hash(&mut h);
    }
    h.finish()
}

/// All roots of `f` in its own coefficient field, sorted in enumeration order.
pub fn find_roots(f: &UniPoly) -> Result<Vec<Fe>> {
    let field = f.field().clone();
    let deg = f.degree().ok_or_else(|| Error::Invalid("roots of the zero polynomial".into()))?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let f = f.monic();
    let x = UniPoly::x(&field);
    let xq = x.pow_mod(field.order() as u128, &f);
    let g = f.gcd(&xq.sub(&x));
    let mut roots = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(&f));
    split_linear(&g, &mut rng, &mut roots);
    roots.sort();
    Ok(roots)
}

/// Roots of `f` inside the extension `dst`, after mapping coefficients with
/// `embed`.
pub fn find_roots_in(f: &UniPoly, dst: &Gf, embed: impl FnMut(Fe) -> Fe) -> Result<Vec<Fe>> {
    find_roots(&f.map(dst, embed))
}

fn split_linear(g: &UniPoly, rng: &mut ChaCha8Rng, out: &mut Vec<Fe>) {
    let field = g.field().clone();
    let deg = match g.degree() {
        Some(d) if d > 0 => d,
        _ => return,
    };
    if deg == 1 {
        let m = g.monic();
        out.push(field.neg(m.coeff(0)));
        return;
    }
    let q = field.order();
    loop {
        let a = Fe::from_index(rng.gen_range(0..q));
        let b = Fe::from_index(rng.gen_range(1..q));
        let base = UniPoly::new(&field, vec![a, b]);
        let probe = if field.is_odd() {
            base.pow_mod((q as u128 - 1) / 2, g).sub(&UniPoly::constant(&field, field.one()))
        } else {
            // absolute trace to F_2
            let mut acc = base.rem(g).expect("nonzero");
            let mut term = acc.clone();
            for _ in 1..(field.degree() as usize) {
                term = term.mul_mod(&term, g);
                acc = acc.add(&term);
            }
            acc
        };
        let h = g.gcd(&probe);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < deg {
            let other = g.divrem(&h).expect("nonzero").0;
            split_linear(&h, rng, out);
            split_linear(&other, rng, out);
            return;
        }
    }
}
