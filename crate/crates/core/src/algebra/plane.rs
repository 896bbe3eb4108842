//! Common zeros of ternary forms, by resultants in one affine coordinate and
//! root finding over a sufficiently large extension.

use super::field::{Fe, Gf};
use super::form::Form;
use super::poly::{find_roots, lcm, UniPoly};
use super::proj::normalize;
use crate::error::{Error, Result};

/// Finite set of common zeros, all conjugates included, with coordinates in
/// `field` (an extension of the coefficient field).
#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub field: Gf,
    pub points: Vec<Vec<Fe>>,
}

#[derive(Clone, Debug)]
pub enum CommonZeros {
    Finite(ZeroSet),
    /// The forms share a curve component.
    Infinite,
}

/// Polynomial in y with coefficients in F[x]; index = power of y.
type BiPoly = Vec<UniPoly>;

fn trim_bi(mut b: BiPoly) -> BiPoly {
    while b.last().is_some_and(|p| p.is_zero()) {
        b.pop();
    }
    b
}

/// Dehomogenize at z = 1.
fn affine(f: &Form) -> BiPoly {
    let field = f.field();
    let mut coeffs: Vec<Vec<Fe>> = vec![vec![Fe::ZERO; f.degree() + 1]; f.degree() + 1];
    for (e, c) in f.terms() {
        if !c.is_zero() {
            coeffs[e[1] as usize][e[0] as usize] = field.add(coeffs[e[1] as usize][e[0] as usize], c);
        }
    }
    trim_bi(coeffs.into_iter().map(|v| UniPoly::new(field, v)).collect())
}

/// Determinant of a square matrix of polynomials by Bareiss elimination.
fn bareiss_det(mut m: Vec<Vec<UniPoly>>, field: &Gf) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::constant(field, field.one());
    }
    let mut negate = false;
    let mut prev = UniPoly::constant(field, field.one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return UniPoly::zero(field),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                let (q, r) = num.divrem(&prev).expect("nonzero Bareiss pivot");
                debug_assert!(r.is_zero(), "Bareiss division is exact");
                m[i][j] = q;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.scale(field.neg(field.one()))
    } else {
        d
    }
}

/// Res_y(f, g) as a polynomial in x. When neither involves y, returns
/// gcd(f, g) instead so that common vertical lines are not lost.
fn resultant_y(f: &BiPoly, g: &BiPoly, field: &Gf) -> UniPoly {
    let (m, n) = (f.len().saturating_sub(1), g.len().saturating_sub(1));
    if f.is_empty() || g.is_empty() {
        return UniPoly::zero(field);
    }
    if m == 0 && n == 0 {
        return f[0].gcd(&g[0]);
    }
    let size = m + n;
    let zero = UniPoly::zero(field);
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![zero.clone(); size];
        for (j, c) in f.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![zero.clone(); size];
        for (j, c) in g.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    bareiss_det(rows, field)
}

fn eval_bi_at_x(b: &BiPoly, x: Fe, dst: &Gf, embed: &dyn Fn(Fe) -> Fe) -> UniPoly {
    let coeffs: Vec<Fe> = b.iter().map(|p| p.map(dst, embed).eval(x)).collect();
    UniPoly::new(dst, coeffs)
}

fn univariate_gcd(polys: &[UniPoly]) -> UniPoly {
    let field = polys[0].field().clone();
    polys.iter().fold(UniPoly::zero(&field), |acc, p| acc.gcd(p))
}

/// Extension degree needed to split `p` (zero and constants need none).
fn split_deg(p: &UniPoly) -> Result<usize> {
    match p.degree() {
        None | Some(0) => Ok(1),
        Some(_) => p.splitting_degree(),
    }
}

/// Largest field order this solver will move into.
const MAX_ORDER: u128 = 1 << 62;

pub fn common_zeros(forms: &[Form]) -> Result<CommonZeros> {
    let forms: Vec<&Form> = forms.iter().filter(|f| !f.is_zero()).collect();
    if forms.is_empty() {
        return Ok(CommonZeros::Infinite);
    }
    let base = forms[0].field().clone();
    if forms.iter().any(|f| f.nvars() != 3) {
        return Err(Error::Invalid("common_zeros expects ternary forms".into()));
    }
    if forms.iter().any(|f| f.degree() == 0) {
        return Ok(CommonZeros::Finite(ZeroSet { field: base, points: Vec::new() }));
    }
    if forms.len() == 1 {
        return Ok(CommonZeros::Infinite);
    }

    // Affine chart z = 1: x-coordinates from pairwise resultants.
    let bis: Vec<BiPoly> = forms.iter().map(|f| affine(f)).collect();
    let mut r = UniPoly::zero(&base);
    for i in 0..bis.len() {
        for j in i + 1..bis.len() {
            let res = resultant_y(&bis[i], &bis[j], &base);
            if !res.is_zero() {
                r = if r.is_zero() { res } else { r.gcd(&res) };
            }
        }
    }
    if r.is_zero() {
        return Ok(CommonZeros::Infinite);
    }

    // Line z = 0 minus (1:0:0): points (x:1:0).
    let at_infinity: Vec<UniPoly> = forms
        .iter()
        .map(|f| {
            let d = f.degree();
            let coeffs: Vec<Fe> = (0..=d).map(|a| f.coeff(&[a as u8, (d - a) as u8, 0])).collect();
            UniPoly::new(&base, coeffs)
        })
        .collect();
    let g_inf = univariate_gcd(&at_infinity);
    if g_inf.is_zero() {
        return Ok(CommonZeros::Infinite);
    }

    // Pass 1: find the field of definition of every point.
    let mut deg = lcm(split_deg(&r)?, split_deg(&g_inf)?);
    loop {
        let field = base.extension(deg as u32)?;
        let (need, _) = solve_in(&forms, &bis, &r, &g_inf, &base, &field)?;
        if need == 1 {
            break;
        }
        deg *= need;
        if (base.order() as u128).checked_pow(deg as u32).map_or(true, |o| o > MAX_ORDER) {
            return Err(Error::Unsupported(format!(
                "common zeros need an extension of degree {deg} over {}",
                base.literal()
            )));
        }
    }
    let field = base.extension(deg as u32)?;
    let (_, points) = solve_in(&forms, &bis, &r, &g_inf, &base, &field)?;
    match points {
        Some(points) => Ok(CommonZeros::Finite(ZeroSet { field, points })),
        None => Ok(CommonZeros::Infinite),
    }
}

/// Solves in `field`; returns the extra extension degree still needed (1 if
/// none) and, when nothing more is needed, the points (`None` when a
/// positive-dimensional component was detected).
#[allow(clippy::type_complexity)]
fn solve_in(
    forms: &[&Form],
    bis: &[BiPoly],
    r: &UniPoly,
    g_inf: &UniPoly,
    base: &Gf,
    field: &Gf,
) -> Result<(usize, Option<Vec<Vec<Fe>>>)> {
    let emb = super::embed::Embedding::new(base, field)?;
    let embed = |c: Fe| emb.apply(c);
    let mut need = 1usize;
    let mut points = Vec::new();

    if r.degree().unwrap_or(0) > 0 {
        for x0 in find_roots(&r.map(field, embed))? {
            let ys: Vec<UniPoly> = bis.iter().map(|b| eval_bi_at_x(b, x0, field, &embed)).collect();
            let g = univariate_gcd(&ys);
            if g.is_zero() {
                return Ok((1, None));
            }
            let e = split_deg(&g)?;
            need = lcm(need, e);
            if need == 1 && g.degree().unwrap_or(0) > 0 {
                for y0 in find_roots(&g)? {
                    points.push(vec![x0, y0, field.one()]);
                }
            }
        }
    }
    if g_inf.degree().unwrap_or(0) > 0 {
        for x0 in find_roots(&g_inf.map(field, embed))? {
            points.push(vec![x0, field.one(), Fe::ZERO]);
        }
    }
    let e100 = [field.one(), Fe::ZERO, Fe::ZERO];
    if forms.iter().all(|f| f.over(field).map(|g| g.eval(&e100).is_zero()).unwrap_or(false)) {
        points.push(e100.to_vec());
    }
    if need > 1 {
        return Ok((need, Some(Vec::new())));
    }
    let mut pts: Vec<Vec<Fe>> = points.iter().map(|p| normalize(field, p)).collect();
    pts.sort();
    pts.dedup();
    Ok((1, Some(pts)))
}

/// Determinant of the matrix of second partials, a cubic for a ternary
/// cubic.
pub fn hessian(f: &Form) -> Form {
    let second: Vec<Vec<Form>> = (0..3).map(|i| (0..3).map(|j| f.partial(i).partial(j)).collect()).collect();
    let m = |i: usize, j: usize| &second[i][j];
    let t1 = m(0, 0).mul(&m(1, 1).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 1))));
    let t2 = m(0, 1).mul(&m(1, 0).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 0))));
    let t3 = m(0, 2).mul(&m(1, 0).mul(m(2, 1)).sub(&m(1, 1).mul(m(2, 0))));
    t1.sub(&t2).add(&t3)
}

/// Singular points of a plane curve: common zeros of the form and its
/// partials.
pub fn plane_singular_points(f: &Form) -> Result<CommonZeros> {
    let mut sys = vec![f.clone()];
    sys.extend(f.gradient());
    common_zeros(&sys)
}

/// Whether a binary form (coefficients of u^d, u^(d-1) v, ..., v^d) has d
/// distinct roots in P^1 over the closure.
pub fn binary_squarefree(field: &Gf, coeffs: &[Fe]) -> bool {
    let d = coeffs.len() - 1;
    // In s = u/v: coefficient of s^i is coeffs[d - i].
    let g = UniPoly::new(field, coeffs.iter().rev().copied().collect());
    match g.degree() {
        None => false,
        Some(e) => d - e <= 1 && g.is_squarefree(),
    }
}

/// Polynomial g(s) = F(s, 1) of a binary form (coefficients of u^d, ...,
/// v^d).
fn dehomogenize_binary(field: &Gf, coeffs: &[Fe]) -> UniPoly {
    UniPoly::new(field, coeffs.iter().rev().copied().collect())
}

/// Extension degree over which every root of the binary form is defined.
pub fn binary_split_degree(field: &Gf, coeffs: &[Fe]) -> Result<usize> {
    let g = dehomogenize_binary(field, coeffs);
    if g.is_zero() {
        return Err(Error::Invalid("roots of the zero binary form".into()));
    }
    split_deg(&g.squarefree_part()?)
}

/// Distinct roots (u : v) of a binary form that lie in its own field, with
/// (1 : 0) first when present and then in enumeration order of u/v.
pub fn binary_form_roots(field: &Gf, coeffs: &[Fe]) -> Result<Vec<(Fe, Fe)>> {
    let g = dehomogenize_binary(field, coeffs);
    if g.is_zero() {
        return Err(Error::Invalid("roots of the zero binary form".into()));
    }
    let mut out = Vec::new();
    if coeffs[0].is_zero() {
        out.push((field.one(), Fe::ZERO));
    }
    if g.degree().unwrap_or(0) > 0 {
        out.extend(find_roots(&g)?.into_iter().map(|s| (s, field.one())));
    }
    Ok(out)
}

/// Two points spanning the line `l . (x, y, z) = 0`.
pub fn line_basis(field: &Gf, l: &[Fe]) -> Result<(Vec<Fe>, Vec<Fe>)> {
    let k = super::linalg::Matrix::from_rows(field, &[l.to_vec()]).kernel();
    if k.len() != 2 {
        return Err(Error::Invalid("the zero linear form is not a line".into()));
    }
    Ok((k[0].clone(), k[1].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(f: &Gf, terms: &[(&[u8], i64)]) -> Form {
        Form::from_terms(f, 3, 3, terms)
    }

    #[test]
    fn smooth_fermat_has_no_singular_points() {
        let f = Gf::prime(5).unwrap();
        let c = cubic(&f, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1)]);
        match plane_singular_points(&c).unwrap() {
            CommonZeros::Finite(z) => assert!(z.points.is_empty()),
            CommonZeros::Infinite => panic!("finite expected"),
        }
    }

    #[test]
    fn nodal_cubic_singular_at_origin() {
        // y^2 z = x^3 + x^2 z, node at (0:0:1)
        let f = Gf::prime(7).unwrap();
        let c = cubic(&f, &[(&[0, 2, 1], 1), (&[3, 0, 0], -1), (&[2, 0, 1], -1)]);
        match plane_singular_points(&c).unwrap() {
            CommonZeros::Finite(z) => {
                assert_eq!(z.points.len(), 1);
                assert_eq!(z.points[0], vec![Fe::ZERO, Fe::ZERO, z.field.one()]);
            }
            CommonZeros::Infinite => panic!("finite expected"),
        }
    }

    #[test]
    fn double_line_is_infinite() {
        let f = Gf::prime(5).unwrap();
        // x^2 y: singular along x = 0
        let c = cubic(&f, &[(&[2, 1, 0], 1)]);
        assert!(matches!(plane_singular_points(&c).unwrap(), CommonZeros::Infinite));
    }

    #[test]
    fn three_conjugate_lines_meet_at_one_point() {
        // x^3 + x y^2 + y^3 over F_2: three lines through (0:0:1)
        let f = Gf::prime(2).unwrap();
        let c = cubic(&f, &[(&[3, 0, 0], 1), (&[1, 2, 0], 1), (&[0, 3, 0], 1)]);
        match plane_singular_points(&c).unwrap() {
            CommonZeros::Finite(z) => assert_eq!(z.points, vec![vec![Fe::ZERO, Fe::ZERO, z.field.one()]]),
            CommonZeros::Infinite => panic!("finite expected"),
        }
    }

    #[test]
    fn fermat_inflection_points_over_f7() {
        let f = Gf::prime(7).unwrap();
        let c = cubic(&f, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1)]);
        match common_zeros(&[c.clone(), hessian(&c)]).unwrap() {
            CommonZeros::Finite(z) => {
                assert_eq!(z.points.len(), 9);
                for p in &z.points {
                    assert!(c.over(&z.field).unwrap().eval(p).is_zero());
                }
            }
            CommonZeros::Infinite => panic!("finite expected"),
        }
    }

    #[test]
    fn points_needing_an_extension() {
        // x^2 + y^2 = 0 and z = 0 over F_3: (1 : ±i : 0) over F_9
        let f = Gf::prime(3).unwrap();
        let a = Form::from_terms(&f, 3, 2, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1)]);
        let b = Form::from_terms(&f, 3, 1, &[(&[0, 0, 1], 1)]);
        match common_zeros(&[a, b]).unwrap() {
            CommonZeros::Finite(z) => {
                assert_eq!(z.field.order(), 9);
                assert_eq!(z.points.len(), 2);
            }
            CommonZeros::Infinite => panic!("finite expected"),
        }
    }
}
