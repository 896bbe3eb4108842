//! Homogeneous polynomials (forms) in a few variables over a [`Gf`].
//!
//! Monomials are kept in descending lexicographic order of their exponent
//! vectors, so for cubics in (x, y, z, t) the order starts
//! `x^3, x^2y, x^2z, x^2t, xy^2, ...` and ends with `t^3`.

use std::fmt::Write as _;

use super::embed::Embedding;
use super::field::{Fe, Gf};
use crate::error::{Error, Result};

/// Exponent vectors of all monomials of degree `deg` in `nvars` variables.
pub fn monomials(nvars: usize, deg: usize) -> Vec<Vec<u8>> {
    fn rec(nvars: usize, deg: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if nvars == 1 {
            prefix.push(deg as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=deg).rev() {
            prefix.push(e as u8);
            rec(nvars - 1, deg - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, deg, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    field: Gf,
    nvars: usize,
    deg: usize,
    exps: Vec<Vec<u8>>,
    coeffs: Vec<Fe>,
}

impl Form {
    pub fn zero(field: &Gf, nvars: usize, deg: usize) -> Form {
        let exps = monomials(nvars, deg);
        let n = exps.len();
        Form { field: field.clone(), nvars, deg, exps, coeffs: vec![Fe::ZERO; n] }
    }

    /// Coefficients in the canonical monomial order.
    pub fn new(field: &Gf, nvars: usize, deg: usize, coeffs: Vec<Fe>) -> Result<Form> {
        let mut f = Form::zero(field, nvars, deg);
        if coeffs.len() != f.coeffs.len() {
            return Err(Error::Invalid(format!(
                "expected {} coefficients, got {}",
                f.coeffs.len(),
                coeffs.len()
            )));
        }
        f.coeffs = coeffs;
        Ok(f)
    }

    pub fn from_terms(field: &Gf, nvars: usize, deg: usize, terms: &[(&[u8], i64)]) -> Form {
        let mut f = Form::zero(field, nvars, deg);
        for (e, c) in terms {
            let idx = f.index_of(e).expect("monomial of the right shape");
            f.coeffs[idx] = field.add(f.coeffs[idx], field.from_int(*c));
        }
        f
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear(field: &Gf, coeffs: &[Fe]) -> Form {
        let n = coeffs.len();
        let mut f = Form::zero(field, n, 1);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0u8; n];
            e[i] = 1;
            let idx = f.index_of(&e).unwrap();
            f.coeffs[idx] = c;
        }
        f
    }

    pub fn constant(field: &Gf, nvars: usize, c: Fe) -> Form {
        let mut f = Form::zero(field, nvars, 0);
        f.coeffs[0] = c;
        f
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn exponents(&self) -> &[Vec<u8>] {
        &self.exps
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], Fe)> {
        self.exps.iter().map(|e| e.as_slice()).zip(self.coeffs.iter().copied())
    }

    pub fn index_of(&self, e: &[u8]) -> Option<usize> {
        if e.len() != self.nvars || e.iter().map(|&x| x as usize).sum::<usize>() != self.deg {
            return None;
        }
        self.exps.iter().position(|x| x == e)
    }

    pub fn coeff(&self, e: &[u8]) -> Fe {
        self.index_of(e).map_or(Fe::ZERO, |i| self.coeffs[i])
    }

    pub fn set_coeff(&mut self, e: &[u8], c: Fe) -> Result<()> {
        let i = self
            .index_of(e)
            .ok_or_else(|| Error::Invalid(format!("monomial {e:?} does not belong to this form")))?;
        self.coeffs[i] = c;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, pt: &[Fe]) -> Fe {
        let f = &self.field;
        let mut powers: Vec<Vec<Fe>> = Vec::with_capacity(self.nvars);
        for &v in pt.iter().take(self.nvars) {
            let mut p = Vec::with_capacity(self.deg + 1);
            let mut acc = f.one();
            for _ in 0..=self.deg {
                p.push(acc);
                acc = f.mul(acc, v);
            }
            powers.push(p);
        }
        let mut sum = Fe::ZERO;
        for (e, &c) in self.exps.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut term = c;
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    term = f.mul(term, powers[i][ei as usize]);
                }
            }
            sum = f.add(sum, term);
        }
        sum
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!((self.nvars, self.deg), (other.nvars, other.deg), "shape mismatch");
        let mut out = self.clone();
        for (a, &b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a = self.field.add(*a, b);
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.scale(self.field.neg(self.field.one())))
    }

    pub fn scale(&self, c: Fe) -> Form {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a = self.field.mul(*a, c);
        }
        out
    }

    pub fn mul(&self, other: &Form) -> Form {
        assert_eq!(self.nvars, other.nvars);
        let f = &self.field;
        let mut out = Form::zero(f, self.nvars, self.deg + other.deg);
        for (ea, &a) in self.exps.iter().zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            for (eb, &b) in other.exps.iter().zip(&other.coeffs) {
                if b.is_zero() {
                    continue;
                }
                let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let idx = out.index_of(&e).unwrap();
                out.coeffs[idx] = f.add(out.coeffs[idx], f.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Form {
        let mut acc = Form::constant(&self.field, self.nvars, self.field.one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Form {
        let f = &self.field;
        if self.deg == 0 {
            return Form::zero(f, self.nvars, 0);
        }
        let mut out = Form::zero(f, self.nvars, self.deg - 1);
        for (e, &c) in self.exps.iter().zip(&self.coeffs) {
            if c.is_zero() || e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            let idx = out.index_of(&d).unwrap();
            out.coeffs[idx] = f.add(out.coeffs[idx], f.mul(c, f.from_int(e[i] as i64)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Form> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// `F(sum_j m[0][j] y_j, ..., sum_j m[n-1][j] y_j)`, a form in
    /// `m[0].len()` new variables.
    pub fn substitute(&self, m: &[Vec<Fe>]) -> Form {
        assert_eq!(m.len(), self.nvars);
        let f = &self.field;
        let new_n = m.first().map_or(0, |r| r.len());
        let lins: Vec<Form> = m.iter().map(|row| Form::linear(f, row)).collect();
        let mut pows: Vec<Vec<Form>> = Vec::with_capacity(self.nvars);
        for l in &lins {
            let mut p = vec![Form::constant(f, new_n, f.one())];
            for k in 1..=self.deg {
                let next = p[k - 1].mul(l);
                p.push(next);
            }
            pows.push(p);
        }
        let mut out = Form::zero(f, new_n, self.deg);
        for (e, &c) in self.exps.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut term = Form::constant(f, new_n, c);
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    term = term.mul(&pows[i][ei as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Binary form `F(u p + v q)`, returned as coefficients of
    /// `u^deg, u^(deg-1) v, ..., v^deg`.
    pub fn restrict_to_line(&self, p: &[Fe], q: &[Fe]) -> Vec<Fe> {
        let m: Vec<Vec<Fe>> = (0..self.nvars).map(|i| vec![p[i], q[i]]).collect();
        let b = self.substitute(&m);
        (0..=self.deg)
            .map(|j| b.coeff(&[(self.deg - j) as u8, j as u8]))
            .collect()
    }

    /// Coefficientwise image under a field embedding.
    pub fn embed(&self, e: &Embedding) -> Form {
        Form {
            field: e.dst().clone(),
            nvars: self.nvars,
            deg: self.deg,
            exps: self.exps.clone(),
            coeffs: self.coeffs.iter().map(|&c| e.apply(c)).collect(),
        }
    }

    /// Into the extension `dst` of the coefficient field.
    pub fn over(&self, dst: &Gf) -> Result<Form> {
        if dst == &self.field {
            return Ok(self.clone());
        }
        Ok(self.embed(&Embedding::new(&self.field, dst)?))
    }

    /// Coefficientwise descent to a subfield, if all coefficients lie there.
    pub fn descend(&self, e: &Embedding) -> Option<Form> {
        let coeffs: Option<Vec<Fe>> = self.coeffs.iter().map(|&c| e.try_descend(c)).collect();
        Some(Form {
            field: e.src().clone(),
            nvars: self.nvars,
            deg: self.deg,
            exps: self.exps.clone(),
            coeffs: coeffs?,
        })
    }

    /// Same form with the first nonzero coefficient scaled to 1.
    pub fn normalized(&self) -> Form {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(&c) => self.scale(self.field.inv(c).unwrap()),
            None => self.clone(),
        }
    }

    /// Exact division by another form, if it divides.
    pub fn divide(&self, d: &Form) -> Option<Form> {
        assert_eq!(self.nvars, d.nvars);
        let f = &self.field;
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Form::zero(f, self.nvars, self.deg.saturating_sub(d.deg)));
        }
        if d.deg > self.deg {
            return None;
        }
        let lead = d.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let lead_e = &d.exps[lead];
        let lead_inv = f.inv(d.coeffs[lead]).unwrap();
        let mut rem = self.clone();
        let mut quo = Form::zero(f, self.nvars, self.deg - d.deg);
        // Lex-leading term elimination.
        while let Some(i) = rem.coeffs.iter().position(|c| !c.is_zero()) {
            let e = &rem.exps[i];
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u8> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let c = f.mul(rem.coeffs[i], lead_inv);
            let qi = quo.index_of(&qe).unwrap();
            quo.coeffs[qi] = f.add(quo.coeffs[qi], c);
            let mut mono = Form::zero(f, self.nvars, qe.iter().map(|&x| x as usize).sum());
            let mi = mono.index_of(&qe).unwrap();
            mono.coeffs[mi] = c;
            rem = rem.sub(&mono.mul(d));
        }
        Some(quo)
    }

    /// Human-readable rendering with the given variable names.
    pub fn display(&self, names: &[&str]) -> String {
        let mut s = String::new();
        for (e, &c) in self.exps.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].to_string() } else { format!("{}^{}", names[i], k) })
                .collect();
            let coeff = self.field.format_element(c);
            if mono.is_empty() {
                s.push_str(&coeff);
            } else if c == self.field.one() {
                s.push_str(&mono.join(" "));
            } else {
                let _ = write!(s, "{} {}", coeff, mono.join(" "));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order_and_count() {
        let m = monomials(4, 3);
        assert_eq!(m.len(), 20);
        assert_eq!(m[0], vec![3, 0, 0, 0]);
        assert_eq!(m[1], vec![2, 1, 0, 0]);
        assert_eq!(m[19], vec![0, 0, 0, 3]);
        assert_eq!(monomials(3, 3).len(), 10);
    }

    #[test]
    fn partials_and_eval() {
        let f = Gf::prime(5).unwrap();
        let fermat = Form::from_terms(&f, 4, 3, &[(&[3, 0, 0, 0], 1), (&[0, 3, 0, 0], 1), (&[0, 0, 3, 0], 1), (&[0, 0, 0, 3], 1)]);
        let pt: Vec<Fe> = [1, 4, 0, 0].iter().map(|&x| f.from_int(x)).collect();
        assert!(fermat.eval(&pt).is_zero());
        let dx = fermat.partial(0);
        assert_eq!(dx.coeff(&[2, 0, 0, 0]), f.from_int(3));
    }

    #[test]
    fn substitution_and_line_restriction() {
        let f = Gf::prime(7).unwrap();
        let g = Form::from_terms(&f, 3, 3, &[(&[2, 1, 0], 1), (&[0, 0, 3], 2), (&[1, 1, 1], 3)]);
        let p: Vec<Fe> = [1, 2, 3].iter().map(|&x| f.from_int(x)).collect();
        let q: Vec<Fe> = [0, 1, 5].iter().map(|&x| f.from_int(x)).collect();
        let b = g.restrict_to_line(&p, &q);
        for (u, v) in [(1i64, 0i64), (0, 1), (2, 3), (5, 6)] {
            let (u, v) = (f.from_int(u), f.from_int(v));
            let pt: Vec<Fe> = (0..3).map(|i| f.add(f.mul(u, p[i]), f.mul(v, q[i]))).collect();
            let mut val = Fe::ZERO;
            for (j, &c) in b.iter().enumerate() {
                val = f.add(val, f.mul(c, f.mul(f.pow(u, (3 - j) as u128), f.pow(v, j as u128))));
            }
            assert_eq!(val, g.eval(&pt));
        }
    }

    #[test]
    fn exact_division() {
        let f = Gf::prime(5).unwrap();
        let a = Form::from_terms(&f, 3, 1, &[(&[1, 0, 0], 1), (&[0, 1, 0], 2)]);
        let b = Form::from_terms(&f, 3, 2, &[(&[0, 2, 0], 1), (&[1, 0, 1], 3), (&[0, 0, 2], 4)]);
        let prod = a.mul(&b);
        assert_eq!(prod.divide(&a).unwrap(), b);
        let c = Form::from_terms(&f, 3, 1, &[(&[0, 0, 1], 1)]);
        assert!(prod.divide(&c).is_none());
    }
}
