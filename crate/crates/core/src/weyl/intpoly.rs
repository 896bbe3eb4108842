//! Integer polynomials (coefficients low to high) and small integer matrices.

pub type IntPoly = Vec<i64>;

pub fn trim(mut a: IntPoly) -> IntPoly {
    while a.len() > 1 && a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn mul(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn pow(a: &[i64], n: u32) -> IntPoly {
    let mut r = vec![1i64];
    for _ in 0..n {
        r = mul(&r, a);
    }
    r
}

/// Exact division by a monic polynomial; `None` if there is a remainder.
pub fn div_exact(a: &[i64], d: &[i64]) -> Option<IntPoly> {
    assert_eq!(d.last(), Some(&1), "divisor must be monic");
    let dd = d.len() - 1;
    let mut r = a.to_vec();
    if r.len() < d.len() {
        return if r.iter().all(|&x| x == 0) { Some(vec![0]) } else { None };
    }
    let mut q = vec![0i64; r.len() - dd];
    for i in (dd..r.len()).rev() {
        let c = r[i];
        q[i - dd] = c;
        for (j, &dj) in d.iter().enumerate() {
            r[i - dd + j] -= c * dj;
        }
    }
    if r.iter().any(|&x| x != 0) {
        return None;
    }
    Some(trim(q))
}

pub fn cyclotomic(n: u32) -> IntPoly {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = div_exact(&num, &cyclotomic(d)).expect("cyclotomic factor");
    }
    num
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u32
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut m = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Sum of the d-th powers of the primitive n-th roots of unity.
pub fn ramanujan_sum(n: u32, d: u32) -> i64 {
    let g = gcd(n, d);
    let m = n / g;
    mobius(m) * euler_phi(n) as i64 / euler_phi(m) as i64
}

pub type Mat7 = [[i64; 7]; 7];

pub fn mat_mul(a: &Mat7, b: &Mat7) -> Mat7 {
    let mut out = [[0i64; 7]; 7];
    for i in 0..7 {
        for k in 0..7 {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..7 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn identity7() -> Mat7 {
    let mut m = [[0i64; 7]; 7];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn trace(m: &Mat7) -> i64 {
    (0..7).map(|i| m[i][i]).sum()
}

/// det(tI - m), monic of degree 7, by Faddeev-LeVerrier.
pub fn charpoly7(m: &Mat7) -> IntPoly {
    let n = 7usize;
    let mut c = vec![0i64; n + 1];
    c[n] = 1;
    let mut mk = [[0i64; 7]; 7];
    for k in 1..=n {
        // M_k = M * M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += c[n - k + 1];
        }
        mk = next;
        let t = trace(&mat_mul(m, &mk));
        assert_eq!(t % k as i64, 0, "Faddeev-LeVerrier division is exact");
        c[n - k] = -t / k as i64;
    }
    c
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i == r || a[i][c] == 0 {
                continue;
            }
            let (f, g) = (a[r][c], a[i][c]);
            for j in 0..ncols {
                a[i][j] = a[i][j] * f - a[r][j] * g;
            }
            let content = a[i].iter().fold(0i128, |acc, &x| gcd128(acc, x.abs()));
            if content > 1 {
                for x in a[i].iter_mut() {
                    *x /= content;
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd128(b, a % b)
    }
}

/// Renders `c_0 + c_1 t + ...` with powers descending, e.g. `t^2 + t + 1`.
pub fn display(p: &[i64], var: &str) -> String {
    let mut s = String::new();
    for (i, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        let a = c.abs();
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let body = if i == 0 || a != 1 { format!("{a}{mono}") } else { mono };
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        s.push_str(&body);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
