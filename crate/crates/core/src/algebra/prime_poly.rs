//! Dense polynomials over a prime field F_p with `u64` coefficients.
//!
//! Only what the modulus search needs: multiplication modulo a monic
//! polynomial, Frobenius powers of `x`, gcd, and Rabin's irreducibility test.

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `f`.
fn rem_monic(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let n = f.len() - 1;
    trim(&mut a);
    while a.len() > n {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - n;
        for (i, &c) in f.iter().enumerate() {
            let sub = (lead as u128 * c as u128 % p as u128) as u64;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(&mut a);
    }
    a
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    rem_monic(out, f, p)
}

fn pow_poly_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = rem_monic(base.to_vec(), f, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(&r, &b, f, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, f, p);
        }
    }
    r
}

fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lead_inv = inv_mod(*b.last().unwrap(), p);
        let monic: Vec<u64> = b
            .iter()
            .map(|&c| (c as u128 * lead_inv as u128 % p as u128) as u64)
            .collect();
        let r = rem_monic(a, &monic, p);
        a = monic;
        b = r;
    }
    a
}

/// Rabin's test for a monic `f` of degree `k` over F_p.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    // x^(p^j) mod f for j = 0..=k
    let mut frob = Vec::with_capacity(k + 1);
    frob.push(rem_monic(vec![0, 1], f, p));
    for j in 1..=k {
        let prev = frob[j - 1].clone();
        frob.push(pow_poly_mod(&prev, p, f, p));
    }
    let x = rem_monic(vec![0, 1], f, p);
    let mut last = frob[k].clone();
    trim(&mut last);
    if last != x {
        return false;
    }
    for r in prime_factors(k as u64) {
        let j = k / r as usize;
        let mut d = frob[j].clone();
        d.resize(d.len().max(2), 0);
        d[1] = (d[1] + p - 1) % p;
        let g = gcd(f.to_vec(), d, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The least monic irreducible polynomial of degree `k` over F_p, ordering
/// candidates by the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of their
/// lower coefficients.
pub(crate) fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    if k == 1 {
        return vec![0, 1];
    }
    let count = p.checked_pow(k as u32).expect("modulus search space overflow");
    for code in 0..count {
        let mut f = vec![0u64; k + 1];
        let mut c = code;
        for slot in f.iter_mut().take(k) {
            *slot = c % p;
            c /= p;
        }
        f[k] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_cubic_over_f2() {
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn least_cubic_over_f3() {
        // x^3 + 2x + 1
        assert_eq!(least_irreducible(3, 3), vec![1, 2, 0, 1]);
    }

    #[test]
    fn rabin_agrees_with_root_scan_for_cubics() {
        for p in [2u64, 3, 5, 7] {
            for code in 0..p * p * p {
                let f = vec![code % p, (code / p) % p, code / (p * p), 1];
                let has_root = (0..p).any(|x| {
                    (f[0] + f[1] * x + f[2] * x * x + x * x * x) % p == 0
                });
                assert_eq!(is_irreducible(&f, p), !has_root, "p={p} f={f:?}");
            }
        }
    }
}
