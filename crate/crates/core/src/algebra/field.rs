//! Finite fields F_{p^k} with canonical moduli.
//!
//! Elements are stored as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of
//! their coordinates in the power basis of the modulus. That integer is also
//! the element enumeration order used wherever "smallest" appears.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::prime_poly::{is_prime, least_irreducible, prime_factors};
use crate::error::{Error, Result};

/// Fields up to this order carry log/exp/Zech tables.
pub const TABLE_LIMIT: u64 = 1 << 21;

/// A field element, meaningful only together with its [`Gf`].
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Fe(u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);

    /// Position in the enumeration order.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn from_index(i: u64) -> Fe {
        Fe(i)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Discrete-log representation of a tabled field.
///
/// Nonzero elements are exponents of a fixed primitive element in `0..n`
/// (`n = q - 1`); zero is the sentinel `n`.
pub struct LogTables {
    n: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one: u32,
    primitive: Fe,
}

impl LogTables {
    #[inline]
    pub fn zero(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn one(&self) -> u32 {
        0
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn to_log(&self, a: Fe) -> u32 {
        self.log[a.0 as usize]
    }

    #[inline]
    pub fn from_log(&self, l: u32) -> Fe {
        if l == self.n {
            Fe(0)
        } else {
            Fe(self.exp[l as usize] as u64)
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == self.n || b == self.n {
            return self.n;
        }
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == self.n {
            return b;
        }
        if b == self.n {
            return a;
        }
        let d = if b >= a { b - a } else { b + self.n - a };
        let z = self.zech[d as usize];
        if z == self.n {
            return self.n;
        }
        let s = a + z;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.mul(a, self.neg_one)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Inverse of a nonzero log; zero maps to zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        if a == self.n || a == 0 {
            a
        } else {
            self.n - a
        }
    }

    #[inline]
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == self.n {
            return if e == 0 { 0 } else { self.n };
        }
        ((a as u64 * (e % self.n as u64)) % self.n as u64) as u32
    }

    pub fn primitive(&self) -> Fe {
        self.primitive
    }
}

struct Inner {
    p: u64,
    k: u32,
    order: u64,
    modulus: Vec<u64>,
    tables: Option<LogTables>,
}

/// A finite field F_{p^k} whose modulus is the least monic irreducible of
/// degree `k` (see [`Gf::new`]). Cloning is cheap.
#[derive(Clone)]
pub struct Gf(Arc<Inner>);

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for Gf {}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

fn cache() -> &'static Mutex<HashMap<(u64, u32), Gf>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Gf>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Gf {
    /// F_{p^k} with the lexicographically least monic irreducible modulus.
    /// Instances are cached, so repeated calls return the same field.
    pub fn new(p: u64, k: u32) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::Invalid("extension degree must be at least 1".into()));
        }
        let order = p
            .checked_pow(k)
            .filter(|&q| q < (1u64 << 62))
            .ok_or(Error::FieldTooLarge { p, k })?;
        if let Some(f) = cache().lock().unwrap().get(&(p, k)) {
            return Ok(f.clone());
        }
        let modulus = least_irreducible(p, k);
        let mut inner = Inner { p, k, order, modulus, tables: None };
        if order <= TABLE_LIMIT {
            let bare = Gf(Arc::new(inner));
            let tables = bare.build_tables();
            inner = Arc::try_unwrap(bare.0).ok().expect("fresh field is unshared");
            inner.tables = Some(tables);
        }
        let gf = Gf(Arc::new(inner));
        let mut guard = cache().lock().unwrap();
        Ok(guard.entry((p, k)).or_insert(gf).clone())
    }

    pub fn prime(p: u64) -> Result<Gf> {
        Gf::new(p, 1)
    }

    /// Field with `q` elements, for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Gf> {
        let fs = prime_factors(q);
        if fs.len() != 1 {
            return Err(Error::Invalid(format!("{q} is not a prime power")));
        }
        let p = fs[0];
        let mut k = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            k += 1;
        }
        Gf::new(p, k)
    }

    /// The extension of degree `d` over this field, i.e. F_{p^{kd}}.
    pub fn extension(&self, d: u32) -> Result<Gf> {
        Gf::new(self.0.p, self.0.k * d)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn tables(&self) -> Option<&LogTables> {
        self.0.tables.as_ref()
    }

    pub fn is_odd(&self) -> bool {
        self.0.p != 2
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// The class of `x` in F_p[x]/(modulus); for k = 1 this is the residue 0.
    pub fn generator(&self) -> Fe {
        if self.0.k == 1 {
            Fe(0)
        } else {
            Fe(self.0.p)
        }
    }

    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u64)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe> {
        if coeffs.len() > self.0.k as usize {
            return Err(Error::Invalid(format!(
                "{} coordinates given for a degree-{} field",
                coeffs.len(),
                self.0.k
            )));
        }
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(Error::Invalid(format!("residue {c} out of range mod {}", self.0.p)));
            }
            v = v * self.0.p + c;
        }
        Ok(Fe(v))
    }

    /// Power-basis coordinates, low to high, always `k` entries.
    pub fn coeffs(&self, a: Fe) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.0.k as usize);
        let mut v = a.0;
        for _ in 0..self.0.k {
            out.push(v % self.0.p);
            v /= self.0.p;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.order).map(Fe)
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.0.order
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= p { s - p } else { s });
        }
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if let Some(t) = &self.0.tables {
            return t.from_log(t.add(t.to_log(a), t.to_log(b)));
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.0.k {
            let s = (x % p + y % p) % p;
            out += s * place;
            place = place.wrapping_mul(p);
            x /= p;
            y /= p;
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.0.p;
        if p == 2 || a.0 == 0 {
            return a;
        }
        if self.0.k == 1 {
            return Fe(p - a.0);
        }
        if let Some(t) = &self.0.tables {
            return t.from_log(t.neg(t.to_log(a)));
        }
        let mut x = a.0;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.0.k {
            let d = x % p;
            out += ((p - d) % p) * place;
            place = place.wrapping_mul(p);
            x /= p;
        }
        Fe(out)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if self.0.k == 1 {
            return Fe(((a.0 as u128 * b.0 as u128) % self.0.p as u128) as u64);
        }
        if let Some(t) = &self.0.tables {
            return t.from_log(t.mul(t.to_log(a), t.to_log(b)));
        }
        self.mul_generic(a, b)
    }

    fn mul_generic(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        let k = self.0.k as usize;
        let da = self.coeffs(a);
        let db = self.coeffs(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let m = &self.0.modulus;
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &mi) in m.iter().enumerate().take(k) {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + p - (c * mi) % p) % p;
            }
        }
        let mut v = 0u64;
        for &c in prod[..k].iter().rev() {
            v = v * p + c;
        }
        Fe(v)
    }

    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Fe, mut e: u128) -> Fe {
        if let Some(t) = &self.0.tables {
            let n = t.n as u128;
            let l = t.to_log(a);
            if l == t.n {
                return if e == 0 { Fe(1) } else { Fe(0) };
            }
            return t.from_log(((l as u128 * (e % n)) % n) as u32);
        }
        let mut r = Fe(1);
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(b, b);
            }
        }
        r
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            return Ok(t.from_log(t.inv(t.to_log(a))));
        }
        Ok(self.pow(a, self.0.order as u128 - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^(p^e)`.
    pub fn frobenius(&self, a: Fe, e: u32) -> Fe {
        let e = e % self.0.k;
        if e == 0 || self.0.k == 1 {
            return a;
        }
        self.pow(a, (self.0.p as u128).pow(e))
    }

    /// 1, 0 or -1 according to whether `a` is a nonzero square, zero, or a
    /// non-square. Characteristic 2 is unsupported.
    pub fn quadratic_character(&self, a: Fe) -> Result<i8> {
        if !self.is_odd() {
            return Err(Error::Unsupported("quadratic character in characteristic 2".into()));
        }
        if a.0 == 0 {
            return Ok(0);
        }
        if let Some(t) = &self.0.tables {
            return Ok(if t.to_log(a) % 2 == 0 { 1 } else { -1 });
        }
        let r = self.pow(a, (self.0.order as u128 - 1) / 2);
        Ok(if r == Fe(1) { 1 } else { -1 })
    }

    pub fn is_square(&self, a: Fe) -> bool {
        if !self.is_odd() {
            return true;
        }
        self.quadratic_character(a).map(|c| c >= 0).unwrap_or(false)
    }

    /// A square root of `a` when one exists (odd characteristic only).
    pub fn sqrt(&self, a: Fe) -> Result<Option<Fe>> {
        if !self.is_odd() {
            return Err(Error::Unsupported("square roots in characteristic 2".into()));
        }
        if a.0 == 0 {
            return Ok(Some(Fe(0)));
        }
        if let Some(t) = &self.0.tables {
            let l = t.to_log(a);
            return Ok(if l % 2 == 0 { Some(t.from_log(l / 2)) } else { None });
        }
        if self.quadratic_character(a)? < 0 {
            return Ok(None);
        }
        // Tonelli-Shanks
        let q1 = self.0.order as u128 - 1;
        let mut s = 0u32;
        let mut odd = q1;
        while odd % 2 == 0 {
            odd /= 2;
            s += 1;
        }
        let z = self.find_nonsquare()?;
        let mut m = s;
        let mut c = self.pow(z, odd);
        let mut tt = self.pow(a, odd);
        let mut r = self.pow(a, (odd + 1) / 2);
        while tt != Fe(1) {
            let mut i = 0u32;
            let mut t2 = tt;
            while t2 != Fe(1) {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            tt = self.mul(tt, c);
            r = self.mul(r, b);
        }
        Ok(Some(r))
    }

    /// Number of cube roots of `a` in the field.
    pub fn cube_root_census(&self, a: Fe) -> u32 {
        if a.0 == 0 || self.0.p == 3 || self.0.order % 3 != 1 {
            return 1;
        }
        let one = if let Some(t) = &self.0.tables {
            t.to_log(a) % 3 == 0
        } else {
            self.pow(a, (self.0.order as u128 - 1) / 3) == Fe(1)
        };
        if one {
            3
        } else {
            0
        }
    }

    /// Smallest non-square in enumeration order.
    pub fn find_nonsquare(&self) -> Result<Fe> {
        if !self.is_odd() {
            return Err(Error::Unsupported("no non-squares in characteristic 2".into()));
        }
        for i in 2..self.0.order {
            let a = Fe(i);
            let r = self.pow(a, (self.0.order as u128 - 1) / 2);
            if r != Fe(1) {
                return Ok(a);
            }
        }
        unreachable!("odd-order fields contain non-squares")
    }

    /// Whether `a` lies in the subfield F_{p^e} (requires e | k).
    pub fn in_subfield(&self, a: Fe, e: u32) -> bool {
        self.frobenius(a, e) == a
    }

    /// Least `e` such that `a` lies in F_{p^e}.
    pub fn element_degree(&self, a: Fe) -> u32 {
        (1..=self.0.k)
            .find(|&e| self.0.k % e == 0 && self.in_subfield(a, e))
            .unwrap_or(self.0.k)
    }

    fn build_tables(&self) -> LogTables {
        let q = self.0.order;
        let n = (q - 1) as u32;
        let factors = prime_factors(q - 1);
        let primitive = (1..q)
            .map(Fe)
            .find(|&g| {
                if q == 2 {
                    return true;
                }
                factors.iter().all(|&r| self.pow(g, ((q - 1) / r) as u128) != Fe(1))
            })
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![n; q as usize];
        let mut x = Fe(1);
        for i in 0..n {
            exp[i as usize] = x.0 as u32;
            exp[(i + n) as usize] = x.0 as u32;
            log[x.0 as usize] = i;
            x = self.mul_generic(x, primitive);
        }
        let neg_one = if self.0.p == 2 { 0 } else { n / 2 };
        let mut zech = vec![n; n as usize];
        let one = Fe(1);
        for i in 0..n {
            let e = Fe(exp[i as usize] as u64);
            let s = self.add_digits(one, e);
            zech[i as usize] = log[s.0 as usize];
        }
        LogTables { n, exp, log, zech, neg_one, primitive }
    }

    fn add_digits(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.0.k {
            out += ((x % p + y % p) % p) * place;
            place = place.wrapping_mul(p);
            x /= p;
            y /= p;
        }
        Fe(out)
    }

    /// Parses a bracketed residue list such as `[1,0,2]`, or a bare integer
    /// for prime fields.
    pub fn parse_element(&self, s: &str) -> Result<Fe> {
        let s = s.trim();
        let body = if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            inner
        } else {
            s
        };
        if body.trim().is_empty() {
            return Ok(Fe(0));
        }
        let mut coeffs = Vec::new();
        for part in body.split(',') {
            let v: i64 = part
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad residue `{part}`")))?;
            coeffs.push(v.rem_euclid(self.0.p as i64) as u64);
        }
        self.from_coeffs(&coeffs)
    }

    /// Inverse of [`Gf::parse_element`]: always the full `k`-entry list.
    pub fn format_element(&self, a: Fe) -> String {
        let c: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", c.join(","))
    }

    /// Parses `GF(p^k)` or `GF(p)`.
    pub fn parse_literal(s: &str) -> Result<Gf> {
        let s = s.trim();
        let inner = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Invalid(format!("expected GF(p^k), got `{s}`")))?;
        let (p, k) = match inner.split_once('^') {
            Some((p, k)) => (p.trim(), k.trim()),
            None => (inner.trim(), "1"),
        };
        let p: u64 = p.parse().map_err(|_| Error::Invalid(format!("bad prime `{p}`")))?;
        let k: u32 = k.parse().map_err(|_| Error::Invalid(format!("bad degree `{k}`")))?;
        Gf::new(p, k)
    }

    pub fn literal(&self) -> String {
        format!("GF({}^{})", self.0.p, self.0.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_choices() {
        assert_eq!(Gf::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Gf::new(3, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(Gf::new(3, 1).unwrap().order(), 3);
    }

    #[test]
    fn rejects_non_prime() {
        assert_eq!(Gf::new(4, 1).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn small_arithmetic() {
        let f3 = Gf::prime(3).unwrap();
        assert_eq!(f3.add(f3.from_int(2), f3.from_int(2)), f3.from_int(1));
        let f5 = Gf::prime(5).unwrap();
        assert_eq!(f5.inv(f5.from_int(2)).unwrap(), f5.from_int(3));
        assert_eq!(f5.inv(f5.zero()), Err(Error::DivisionByZero));
        let f8 = Gf::new(2, 3).unwrap();
        let g = f8.generator();
        assert_eq!(f8.pow(g, 3), f8.add(g, f8.one()));
        assert_eq!(f8.frobenius(g, 3), g);
    }

    #[test]
    fn characters_and_roots() {
        let f3 = Gf::prime(3).unwrap();
        assert_eq!(f3.quadratic_character(f3.from_int(2)).unwrap(), -1);
        let f5 = Gf::prime(5).unwrap();
        let r = f5.sqrt(f5.from_int(4)).unwrap().unwrap();
        assert!(r == f5.from_int(2) || r == f5.from_int(3));
        let f7 = Gf::prime(7).unwrap();
        assert_eq!(f7.cube_root_census(f7.one()), 3);
        let total: u32 = f7.elements().map(|a| f7.cube_root_census(a)).sum();
        assert_eq!(total, 7);
        assert_eq!(f3.find_nonsquare().unwrap(), f3.from_int(2));
        assert_eq!(f5.find_nonsquare().unwrap(), f5.from_int(2));
        let f9 = Gf::new(3, 2).unwrap();
        let ns = f9.find_nonsquare().unwrap();
        assert_eq!(f9.pow(ns, 4), f9.neg(f9.one()));
        assert!(Gf::prime(2).unwrap().sqrt(Fe(1)).is_err());
    }

    #[test]
    fn tonelli_shanks_matches_tables() {
        // GF(3^14) has no tables; compare against squaring.
        let f = Gf::new(3, 14).unwrap();
        assert!(f.tables().is_none());
        for i in [5u64, 17, 1234, 999_999, 4_000_000] {
            let a = Fe(i);
            let sq = f.mul(a, a);
            let r = f.sqrt(sq).unwrap().unwrap();
            assert_eq!(f.mul(r, r), sq);
        }
    }

    #[test]
    fn literals_round_trip() {
        let f = Gf::parse_literal("GF(3^3)").unwrap();
        let a = f.parse_element("[1,0,2]").unwrap();
        assert_eq!(f.coeffs(a), vec![1, 0, 2]);
        assert_eq!(f.format_element(a), "[1,0,2]");
        assert_eq!(Gf::parse_literal("GF(5)").unwrap().order(), 5);
    }

    #[test]
    fn tabled_and_generic_multiplication_agree() {
        let f = Gf::new(7, 3).unwrap();
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(11) {
                assert_eq!(f.mul(a, b), f.mul_generic(a, b));
                assert_eq!(f.add(a, b), f.add_digits(a, b));
            }
        }
    }
}
