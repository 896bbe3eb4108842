//! Projective points: normalization and deterministic enumeration.

use super::field::{Fe, Gf};

/// Scales so the first nonzero coordinate is 1. The zero vector is returned
/// unchanged.
pub fn normalize(f: &Gf, v: &[Fe]) -> Vec<Fe> {
    match v.iter().find(|c| !c.is_zero()) {
        Some(&c) => {
            let inv = f.inv(c).expect("nonzero");
            v.iter().map(|&x| f.mul(x, inv)).collect()
        }
        None => v.to_vec(),
    }
}

pub fn same_point(f: &Gf, a: &[Fe], b: &[Fe]) -> bool {
    normalize(f, a) == normalize(f, b)
}

/// |P^n(F_Q)| = Q^n + ... + Q + 1.
pub fn projective_size(q: u64, n: u32) -> u128 {
    (0..=n).map(|i| (q as u128).pow(i)).sum()
}

/// Points of P^{n-1} over `f` (vectors of length `n`), ordered by chart
/// (position of the leading 1) and then lexicographically in the remaining
/// coordinates.
pub fn points(f: &Gf, n: usize) -> impl Iterator<Item = Vec<Fe>> + '_ {
    let q = f.order();
    (0..n).flat_map(move |lead| {
        let free = n - lead - 1;
        let total = q.pow(free as u32);
        (0..total).map(move |mut code| {
            let mut v = vec![Fe::ZERO; n];
            v[lead] = f.one();
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = Fe::from_index(code % q);
                code /= q;
            }
            v
        })
    })
}

/// The line through two points of P^2 as the coefficient vector of its
/// equation.
pub fn line_through(f: &Gf, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let m = |x: Fe, y: Fe| f.mul(x, y);
    normalize(
        f,
        &[
            f.sub(m(a[1], b[2]), m(a[2], b[1])),
            f.sub(m(a[2], b[0]), m(a[0], b[2])),
            f.sub(m(a[0], b[1]), m(a[1], b[0])),
        ],
    )
}

/// Applies `a -> a^(p^e)` to every coordinate.
pub fn frobenius_point(f: &Gf, v: &[Fe], e: u32) -> Vec<Fe> {
    v.iter().map(|&x| f.frobenius(x, e)).collect()
}

/// Least `d` such that the normalized point is fixed by the `d`-th power of
/// the Frobenius relative to the subfield of degree `base` (`base | k`).
pub fn point_degree(f: &Gf, v: &[Fe], base: u32) -> u32 {
    let v = normalize(f, v);
    let k = f.degree() / base;
    (1..=k)
        .find(|&d| k % d == 0 && frobenius_point(f, &v, base * d) == v)
        .unwrap_or(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_size_and_order() {
        let f = Gf::prime(3).unwrap();
        let pts: Vec<Vec<Fe>> = points(&f, 3).collect();
        assert_eq!(pts.len() as u128, projective_size(3, 2));
        assert_eq!(pts[0], vec![f.one(), Fe::ZERO, Fe::ZERO]);
        assert_eq!(pts.last().unwrap(), &vec![Fe::ZERO, Fe::ZERO, f.one()]);
        for p in &pts {
            assert_eq!(&normalize(&f, p), p);
        }
    }

    #[test]
    fn line_contains_both_points() {
        let f = Gf::new(2, 3).unwrap();
        let a = vec![f.one(), f.generator(), Fe::ZERO];
        let b = vec![Fe::ZERO, f.one(), f.generator()];
        let l = line_through(&f, &a, &b);
        for p in [&a, &b] {
            let s = (0..3).fold(Fe::ZERO, |acc, i| f.add(acc, f.mul(l[i], p[i])));
            assert!(s.is_zero());
        }
    }
}
