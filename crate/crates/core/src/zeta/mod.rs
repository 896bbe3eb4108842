//! From point counts to Frobenius traces on Pic, the conjugacy class of
//! Frobenius, and the zeta numerator P(t) = det(1 - qt Fr | Pic).

mod classify;

pub use classify::{classify_surface, classify_surface_with, Classification};

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weyl::intpoly::{self, Mat7};
use crate::weyl::table::cyclotomic_exponents;
use crate::weyl::{weyl, ClassId};

/// Exact point counts N_1..N_D over F_{q^d}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountProfile {
    pub q: u64,
    pub counts: Vec<u128>,
}

/// Traces t_1..t_D of the powers of Frobenius on Pic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceVector {
    pub q: u64,
    pub traces: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Identification {
    Unique(ClassId),
    Ambiguous(Vec<ClassId>),
}

/// t_d = (N_d - 1 - q^(2d)) / q^d, which must be an integer.
pub fn traces_from_counts(counts: &CountProfile) -> Result<TraceVector> {
    let q = counts.q as i128;
    let mut traces = Vec::with_capacity(counts.counts.len());
    for (i, &n) in counts.counts.iter().enumerate() {
        let d = i as u32 + 1;
        let qd = q.pow(d);
        let num = n as i128 - 1 - qd * qd;
        if num % qd != 0 {
            return Err(Error::Verification(format!(
                "N_{d} = {n} gives a non-integral trace over q = {}",
                counts.q
            )));
        }
        traces.push((num / qd) as i64);
    }
    Ok(TraceVector { q: counts.q, traces })
}

const TRACE_DEPTH: usize = 36;

/// Traces of the first `TRACE_DEPTH` powers of each class representative.
fn class_traces() -> &'static Vec<Vec<i64>> {
    static T: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    T.get_or_init(|| {
        weyl()
            .conjugacy_classes()
            .iter()
            .map(|c| crate::weyl::group::mat_pow_traces(&c.representative.matrix(), TRACE_DEPTH))
            .collect()
    })
}

/// Trace of Fr^d on Pic for a surface of class `c`.
pub fn class_trace(c: ClassId, d: usize) -> i64 {
    let t = &class_traces()[c.0 as usize - 1];
    // Traces are periodic with period the element order.
    let order = weyl().class(c).order as usize;
    t[(d - 1) % order]
}

pub fn predicted_counts(c: ClassId, q: u64, depth: usize) -> CountProfile {
    let q = q as u128;
    let counts = (1..=depth)
        .map(|d| {
            let qd = q.pow(d as u32);
            let t = class_trace(c, d) as i128;
            (1 + qd as i128 * qd as i128 + qd as i128 * t) as u128
        })
        .collect();
    CountProfile { q: q as u64, counts }
}

/// Least D such that the trace prefixes of length D separate all 25 classes.
pub fn distinguishing_depth() -> usize {
    static D: OnceLock<usize> = OnceLock::new();
    *D.get_or_init(|| {
        let t = class_traces();
        (1..=TRACE_DEPTH)
            .find(|&d| {
                let mut prefixes: Vec<&[i64]> = t.iter().map(|v| &v[..d]).collect();
                prefixes.sort();
                prefixes.windows(2).all(|w| w[0] != w[1])
            })
            .expect("traces up to the group exponent separate classes")
    })
}

/// Classes whose trace prefix matches.
pub fn candidates(tv: &TraceVector) -> Vec<ClassId> {
    weyl()
        .conjugacy_classes()
        .iter()
        .map(|c| c.id)
        .filter(|&c| tv.traces.iter().enumerate().all(|(i, &t)| class_trace(c, i + 1) == t))
        .collect()
}

pub fn identify_class(tv: &TraceVector) -> Result<Identification> {
    if tv.traces.is_empty() {
        return Err(Error::Invalid("at least one trace is needed".into()));
    }
    let c = candidates(tv);
    match c.len() {
        0 => Err(Error::Verification(format!(
            "traces {:?} match no conjugacy class of W(E6)",
            tv.traces
        ))),
        1 => Ok(Identification::Unique(c[0])),
        _ => Ok(Identification::Ambiguous(c)),
    }
}

/// The numerator with q substituted, plus its symbolic factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaNumerator {
    pub class: String,
    pub q: u64,
    /// Coefficients of P(t), low to high.
    pub coefficients: Vec<i128>,
    /// Product of cyclotomic factors in q and t, e.g. `(1−qt)(1+qt+q²t²)³`.
    pub factored: String,
    /// The denominator (1−t)P(t)(1−q²t) of the zeta function, numerically.
    pub zeta_denominator: String,
}

fn superscript(n: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

fn power(base: &str, e: u64) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}{}", superscript(e)),
    }
}

/// Renders `sum c_i x^i` for `x = qt`, symbolically (`q = None`) or with a
/// numeric q.
fn render_factor(coeffs: &[i64], q: Option<u64>) -> String {
    let mut s = String::from("(");
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let i = i as u64;
        let (mag, neg) = match q {
            None => (c.unsigned_abs() as u128, c < 0),
            Some(q) => ((c.unsigned_abs() as u128) * (q as u128).pow(i as u32), c < 0),
        };
        if s.len() > 1 {
            s.push(if neg { '−' } else { '+' });
        } else if neg {
            s.push('−');
        }
        let mono = match q {
            None => format!("{}{}", power("q", i), power("t", i)),
            Some(_) => power("t", i),
        };
        if mono.is_empty() || mag != 1 {
            s.push_str(&mag.to_string());
        }
        s.push_str(&mono);
    }
    s.push(')');
    s
}

/// Factors (n, multiplicity) of P(t) = prod Phi_n(qt)^m, with Phi_1 read as
/// (1 - qt).
fn numerator_factors(c: ClassId) -> Vec<(u32, u32)> {
    let rec = weyl().class(c);
    let mut f = cyclotomic_exponents(&rec.eigen_list).expect("table rows are consistent");
    match f.iter_mut().find(|(n, _)| *n == 1) {
        Some(e) => e.1 += 1,
        None => f.insert(0, (1, 1)),
    }
    f
}

fn factor_coeffs(n: u32) -> Vec<i64> {
    if n == 1 {
        vec![1, -1]
    } else {
        intpoly::cyclotomic(n)
    }
}

pub fn p_of_t(c: ClassId, q: u64) -> ZetaNumerator {
    let factors = numerator_factors(c);
    let mut factored = String::new();
    let mut numeric = String::new();
    let mut coeffs: Vec<i128> = vec![1];
    for &(n, m) in &factors {
        let fc = factor_coeffs(n);
        factored.push_str(&power(&render_factor(&fc, None), m as u64));
        numeric.push_str(&power(&render_factor(&fc, Some(q)), m as u64));
        let scaled: Vec<i128> = fc
            .iter()
            .enumerate()
            .map(|(i, &x)| x as i128 * (q as i128).pow(i as u32))
            .collect();
        for _ in 0..m {
            coeffs = poly_mul_i128(&coeffs, &scaled);
        }
    }
    let outer = (q as i128).pow(2);
    let zeta_denominator = format!("(1−t){numeric}(1−{outer}t)");
    ZetaNumerator { class: c.to_string(), q, coefficients: coeffs, factored, zeta_denominator }
}

fn poly_mul_i128(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// det(1 - qtM) straight from the representative's integer matrix, used to
/// cross-check [`p_of_t`].
pub fn p_of_t_from_matrix(m: &Mat7, q: u64) -> Vec<i128> {
    let cp = intpoly::charpoly7(m);
    // det(1 - qtM) = (qt)^7 cp(1/(qt)) = sum_i cp_i (qt)^(7-i)
    let mut out = vec![0i128; 8];
    for (i, &c) in cp.iter().enumerate() {
        let k = 7 - i;
        out[k] = c as i128 * (q as i128).pow(k as u32);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn traces_from_known_counts() {
        let tv = traces_from_counts(&CountProfile { q: 2, counts: vec![3] }).unwrap();
        assert_eq!(tv.traces, vec![-1]);
        let q = 5u128;
        let split = traces_from_counts(&CountProfile { q: 5, counts: vec![q * q + 7 * q + 1] }).unwrap();
        assert_eq!(split.traces, vec![7]);
        let c11 = traces_from_counts(&CountProfile { q: 5, counts: vec![q * q - 2 * q + 1] }).unwrap();
        assert_eq!(c11.traces, vec![-2]);
        assert!(traces_from_counts(&CountProfile { q: 2, counts: vec![4] }).is_err());
    }

    #[test]
    fn predicted_first_counts() {
        for q in [2u64, 3, 4, 5, 7] {
            let q2 = (q * q) as u128;
            assert_eq!(predicted_counts(ClassId(1), q, 1).counts, vec![q2 + 7 * q as u128 + 1]);
            assert_eq!(predicted_counts(ClassId(11), q, 1).counts, vec![q2 - 2 * q as u128 + 1]);
        }
        assert_eq!(predicted_counts(ClassId(10), 2, 1).counts, vec![3]);
    }

    #[test]
    fn depth_one_ambiguity_for_zero_sum_classes() {
        let c = candidates(&TraceVector { q: 3, traces: vec![1] });
        for id in [9, 14, 17, 20] {
            assert!(c.contains(&ClassId(id)), "c{id}");
        }
    }

    #[test]
    fn minimal_numerators_render_as_products() {
        let expect = [
            (11, "(1−qt)(1+qt+q²t²)³"),
            (12, "(1−qt)(1+qt+q²t²)(1−qt+q²t²)²"),
            (14, "(1−qt)(1+q³t³+q⁶t⁶)"),
            (13, "(1−qt)(1+qt+q²t²)(1−q²t²+q⁴t⁴)"),
            (10, "(1−qt)(1+qt)²(1+qt+q²t²)(1−qt+q²t²)"),
        ];
        for (c, s) in expect {
            assert_eq!(p_of_t(ClassId(c), 3).factored, s);
        }
        assert_eq!(
            p_of_t(ClassId(10), 2).zeta_denominator,
            "(1−t)(1−2t)(1+2t)²(1+2t+4t²)(1−2t+4t²)(1−4t)"
        );
    }

    #[test]
    fn numerator_matches_matrix_determinant() {
        for c in weyl().conjugacy_classes() {
            for q in [2u64, 3, 7] {
                let m = c.representative.matrix();
                assert_eq!(p_of_t(c.id, q).coefficients, p_of_t_from_matrix(&m, q), "{} q={q}", c.id);
            }
        }
    }
}
