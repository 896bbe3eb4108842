//! Reference data for the 25 conjugacy classes of W(E6): Carter graph,
//! element order and eigenvalues on the orthogonal complement of K.

use super::intpoly::{self, IntPoly};
use crate::error::{Error, Result};

pub struct TableRow {
    pub number: u8,
    pub carter: &'static str,
    pub order: u64,
    pub eigenvalues: [&'static str; 6],
    pub names: &'static str,
}

macro_rules! row {
    ($n:expr, $carter:expr, $order:expr, [$($e:expr),*], $names:expr) => {
        TableRow { number: $n, carter: $carter, order: $order, eigenvalues: [$($e),*], names: $names }
    };
}

pub const TABLE: [TableRow; 25] = [
    row!(1, "∅", 1, ["1", "1", "1", "1", "1", "1"], "id"),
    row!(2, "A1^2", 2, ["-1", "-1", "1", "1", "1", "1"], "(12)(34)"),
    row!(3, "A1^4", 2, ["-1", "-1", "-1", "-1", "1", "1"], ""),
    row!(4, "D4(a1)", 4, ["i", "i", "-i", "-i", "1", "1"], ""),
    row!(5, "A3xA1", 4, ["i", "-i", "-1", "-1", "1", "1"], "(1234)(56)"),
    row!(6, "A2", 3, ["ω", "ω²", "1", "1", "1", "1"], "(123), type II"),
    row!(7, "D4", 6, ["-ω", "-ω²", "-1", "-1", "1", "1"], ""),
    row!(8, "A2xA1^2", 6, ["ω", "ω²", "-1", "-1", "1", "1"], ""),
    row!(9, "A2^2", 3, ["ω", "ω", "ω²", "ω²", "1", "1"], "(123)(456), type III"),
    row!(10, "A5xA1", 6, ["-ω", "-ω²", "ω", "ω²", "-1", "-1"], ""),
    row!(11, "A2^3", 3, ["ω", "ω", "ω", "ω²", "ω²", "ω²"], "type I"),
    row!(12, "E6(a2)", 6, ["-ω", "-ω", "-ω²", "-ω²", "ω", "ω²"], ""),
    row!(13, "E6", 12, ["iω", "iω²", "-iω", "-iω²", "ω", "ω²"], ""),
    row!(14, "E6(a1)", 9, ["ξ9", "ξ9^2", "ξ9^4", "ξ9^5", "ξ9^7", "ξ9^8"], ""),
    row!(15, "A4", 5, ["ξ5", "ξ5^2", "ξ5^3", "ξ5^4", "1", "1"], "(12345)"),
    row!(16, "A1", 2, ["-1", "1", "1", "1", "1", "1"], "(12)"),
    row!(17, "A1^3", 2, ["-1", "-1", "-1", "1", "1", "1"], "(12)(34)(56)"),
    row!(18, "A3", 4, ["i", "-i", "-1", "1", "1", "1"], "(1234)"),
    row!(19, "A3xA1^2", 4, ["i", "-i", "-1", "-1", "-1", "1"], ""),
    row!(20, "D5", 8, ["ξ8", "ξ8^3", "ξ8^5", "ξ8^7", "-1", "1"], ""),
    row!(21, "A2xA1", 6, ["ω", "ω²", "-1", "1", "1", "1"], "(123)(45)"),
    row!(22, "A2^2xA1", 6, ["ω", "ω", "ω²", "ω²", "-1", "1"], ""),
    row!(23, "A5", 6, ["-ω", "-ω²", "ω", "ω²", "-1", "1"], "(123456)"),
    row!(24, "D5(a1)", 12, ["-ω", "-ω²", "i", "-i", "-1", "1"], ""),
    row!(25, "A4xA1", 10, ["ξ5", "ξ5^2", "ξ5^3", "ξ5^4", "-1", "1"], ""),
];

/// An eigenvalue symbol as `exp(2 pi i a / b)`, returned as reduced `(a, b)`.
pub fn eigen_fraction(sym: &str) -> Result<(u32, u32)> {
    let (num, den) = match sym {
        "1" => (0, 1),
        "-1" => (1, 2),
        "i" => (1, 4),
        "-i" => (3, 4),
        "ω" => (1, 3),
        "ω²" => (2, 3),
        "-ω" => (5, 6),
        "-ω²" => (1, 6),
        "iω" => (7, 12),
        "iω²" => (11, 12),
        "-iω" => (1, 12),
        "-iω²" => (5, 12),
        _ => {
            let rest = sym
                .strip_prefix('ξ')
                .ok_or_else(|| Error::Invalid(format!("unknown eigenvalue `{sym}`")))?;
            let (n, k) = rest.split_once('^').unwrap_or((rest, "1"));
            let n: u32 = n.parse().map_err(|_| Error::Invalid(sym.into()))?;
            let k: u32 = k.parse().map_err(|_| Error::Invalid(sym.into()))?;
            (k % n, n)
        }
    };
    let g = intpoly::gcd(num, den);
    Ok(if num == 0 { (0, 1) } else { (num / g, den / g) })
}

/// Multiplicity of each cyclotomic factor `Phi_n`, checking that the
/// eigenvalues form complete Galois orbits.
pub fn cyclotomic_exponents(eigen: &[&str]) -> Result<Vec<(u32, u32)>> {
    let fr: Vec<(u32, u32)> = eigen.iter().map(|s| eigen_fraction(s)).collect::<Result<_>>()?;
    let mut dens: Vec<u32> = fr.iter().map(|f| f.1).collect();
    dens.sort();
    dens.dedup();
    let mut out = Vec::new();
    for n in dens {
        let count = fr.iter().filter(|f| f.1 == n).count() as u32;
        let phi = intpoly::euler_phi(n);
        if count % phi != 0 {
            return Err(Error::Invalid(format!("incomplete orbit of primitive {n}-th roots")));
        }
        let m = count / phi;
        for a in (0..n).filter(|&a| intpoly::gcd(a, n) == 1) {
            let c = fr.iter().filter(|f| **f == (a, n)).count() as u32;
            if c != m {
                return Err(Error::Invalid(format!("unbalanced orbit of primitive {n}-th roots")));
            }
        }
        out.push((n, m));
    }
    Ok(out)
}

/// Characteristic polynomial on the complement of K implied by the row.
pub fn charpoly_from_eigen(eigen: &[&str]) -> Result<IntPoly> {
    let mut p = vec![1i64];
    for (n, m) in cyclotomic_exponents(eigen)? {
        p = intpoly::mul(&p, &intpoly::pow(&intpoly::cyclotomic(n), m));
    }
    Ok(p)
}

/// `1 + sum of the d-th powers of the eigenvalues`: the trace of the d-th
/// power on all of Pic.
pub fn trace_from_eigen(eigen: &[&str], d: u32) -> Result<i64> {
    let mut t = 1i64;
    for (n, m) in cyclotomic_exponents(eigen)? {
        t += m as i64 * intpoly::ramanujan_sum(n, d);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_data_is_consistent() {
        for row in &TABLE {
            let cp = charpoly_from_eigen(&row.eigenvalues).unwrap();
            assert_eq!(cp.len(), 7, "c{}", row.number);
            // the action on K-perp is faithful and semisimple
            let l = row
                .eigenvalues
                .iter()
                .map(|s| eigen_fraction(s).unwrap().1 as u64)
                .fold(1u64, |a, b| a / gcd(a, b) * b);
            assert_eq!(l, row.order, "c{}", row.number);
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn minimal_class_traces() {
        assert_eq!(trace_from_eigen(&TABLE[10].eigenvalues, 1).unwrap(), -2);
        assert_eq!(trace_from_eigen(&TABLE[9].eigenvalues, 1).unwrap(), -1);
        assert_eq!(trace_from_eigen(&TABLE[13].eigenvalues, 3).unwrap(), -2);
    }
}
