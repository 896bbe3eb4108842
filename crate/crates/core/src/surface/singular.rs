//! Singular points and smoothness certificates.
//!
//! A singular cubic surface always has a singular closed point of degree at
//! most 4: a normal cubic surface has at most four singular points, and a
//! non-normal one is singular along a line or a conic, which carry points of
//! degree <= 2. So an empty search up to degree 4 certifies smoothness.

use serde::Serialize;

use crate::algebra::plane::{binary_squarefree, line_basis, plane_singular_points, CommonZeros};
use crate::algebra::{proj, Fe, Form, Gf, UniPoly};
use crate::error::{Error, Result};

use super::count::check_surface;

/// Degree bound for the fibered singular-point search.
pub const CERTIFY_DEPTH: u32 = 4;

#[derive(Clone, Debug)]
pub struct SingularPoint {
    /// Field holding the coordinates.
    pub field: Gf,
    pub coords: Vec<Fe>,
    /// Degree of the closed point over the coefficient field.
    pub degree: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// `f + c t^3` with f a smooth plane cubic.
    Cyclic,
    /// `t^2 L + C` with C smooth and meeting L in three distinct points.
    EckardtShape,
    /// No singular point of degree <= the given bound.
    Search(u32),
}

/// Singular points of degree <= `d_max`, each listed with all conjugates
/// in the field of its degree.
pub fn singular_points(x: &Form, d_max: u32) -> Result<Vec<SingularPoint>> {
    check_surface(x)?;
    let base = x.field();
    let k = base.degree();
    let mut out = Vec::new();
    for d in 1..=d_max {
        let ext = base.extension(d)?;
        let f = x.over(&ext)?;
        let mut system = vec![f.clone()];
        system.extend(f.gradient());
        let mons = plane_monomials();
        let slices: Vec<[Vec<(usize, Fe)>; 4]> = system.iter().map(|g| t_slices(g, &mons)).collect();
        if d == 1 && system.iter().all(|g| g.coeff(&[0, 0, 0, g.degree() as u8]).is_zero()) {
            out.push(SingularPoint { field: ext.clone(), coords: vec![Fe::ZERO, Fe::ZERO, Fe::ZERO, ext.one()], degree: 1 });
        }
        let mut values = vec![Fe::ZERO; mons.len()];
        for b in proj::points(&ext, 3) {
            monomial_values(&ext, &mons, &b, &mut values);
            let mut g = Small::ZERO;
            for sl in &slices {
                g = g.gcd(&ext, fiber_poly(&ext, sl, &values));
                if g.n == 1 {
                    break;
                }
            }
            if g.n == 1 {
                continue;
            }
            let g = UniPoly::new(&ext, g.c[..g.n].to_vec());
            // A zero gcd means the whole line to the apex is singular; t = 0
            // stands in for it.
            let roots = if g.is_zero() { vec![Fe::ZERO] } else { crate::algebra::find_roots(&g)? };
            for t in roots {
                let coords = vec![b[0], b[1], b[2], t];
                let deg = proj::point_degree(&ext, &coords, k) as u32;
                if deg == d {
                    out.push(SingularPoint { field: ext.clone(), coords, degree: d });
                }
            }
        }
    }
    Ok(out)
}

/// Ternary monomials of degree <= 3, each built from an earlier one times
/// one variable: (exponents, parent index, variable).
fn plane_monomials() -> Vec<([u8; 3], usize, usize)> {
    let mut out = vec![([0u8; 3], 0, 0)];
    for deg in 1..=3u8 {
        let prev: Vec<usize> = (0..out.len()).filter(|&k| out[k].0.iter().sum::<u8>() == deg - 1).collect();
        for k in prev {
            for v in 0..3 {
                let mut e = out[k].0;
                e[v] += 1;
                if !out.iter().any(|m| m.0 == e) {
                    out.push((e, k, v));
                }
            }
        }
    }
    out
}

fn monomial_values(f: &Gf, mons: &[([u8; 3], usize, usize)], b: &[Fe], values: &mut [Fe]) {
    values[0] = f.one();
    for k in 1..mons.len() {
        let (_, parent, v) = mons[k];
        values[k] = f.mul(values[parent], b[v]);
    }
}

fn t_slices(g: &Form, mons: &[([u8; 3], usize, usize)]) -> [Vec<(usize, Fe)>; 4] {
    let mut out: [Vec<(usize, Fe)>; 4] = Default::default();
    for (e, c) in g.terms() {
        if !c.is_zero() {
            let idx = mons.iter().position(|m| m.0 == [e[0], e[1], e[2]]).expect("monomial of degree <= 3");
            out[e[3] as usize].push((idx, c));
        }
    }
    out
}

/// Polynomial of degree <= 3 in t; `n` is the length after trimming.
#[derive(Clone, Copy)]
struct Small {
    c: [Fe; 4],
    n: usize,
}

impl Small {
    const ZERO: Small = Small { c: [Fe::ZERO; 4], n: 0 };

    fn trimmed(c: [Fe; 4]) -> Small {
        let n = (0..4).rev().find(|&i| !c[i].is_zero()).map_or(0, |i| i + 1);
        Small { c, n }
    }

    /// Remainder of self by a nonzero `d`.
    fn rem(mut self, f: &Gf, d: &Small) -> Small {
        let lead_inv = f.inv(d.c[d.n - 1]).expect("nonzero leading coefficient");
        while self.n >= d.n {
            let k = f.mul(self.c[self.n - 1], lead_inv);
            let shift = self.n - d.n;
            for i in 0..d.n {
                self.c[i + shift] = f.sub(self.c[i + shift], f.mul(k, d.c[i]));
            }
            self = Small::trimmed(self.c);
        }
        self
    }

    fn gcd(self, f: &Gf, other: Small) -> Small {
        let (mut a, mut b) = (self, other);
        while b.n > 0 {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a
    }
}

fn fiber_poly(f: &Gf, slices: &[Vec<(usize, Fe)>; 4], values: &[Fe]) -> Small {
    let mut c = [Fe::ZERO; 4];
    for (j, s) in slices.iter().enumerate() {
        c[j] = s.iter().fold(Fe::ZERO, |acc, &(i, k)| f.add(acc, f.mul(k, values[i])));
    }
    Small::trimmed(c)
}

/// Slices of `x` by powers of t, as ternary forms (index = power of t).
pub(crate) fn t_parts(x: &Form) -> Vec<Form> {
    let f = x.field();
    (0..=3)
        .map(|j| {
            let mut g = Form::zero(f, 3, 3 - j);
            for (e, c) in x.terms() {
                if e[3] as usize == j && !c.is_zero() {
                    g.set_coeff(&[e[0], e[1], e[2]], c).expect("monomial of the right degree");
                }
            }
            g
        })
        .collect()
}

pub fn plane_cubic_is_smooth(f: &Form) -> Result<bool> {
    Ok(match plane_singular_points(f)? {
        CommonZeros::Finite(z) => z.points.is_empty(),
        CommonZeros::Infinite => false,
    })
}

/// Proves smoothness, using the shape of the equation where possible and the
/// degree-4 search otherwise. A singular surface is an error.
pub fn certify_smooth(x: &Form) -> Result<Certificate> {
    check_surface(x)?;
    let f = x.field();
    let parts = t_parts(x);
    let cyclic = !parts[3].is_zero() && parts[1].is_zero() && parts[2].is_zero();
    if cyclic && f.p() != 3 {
        return if plane_cubic_is_smooth(&parts[0])? {
            Ok(Certificate::Cyclic)
        } else {
            Err(Error::Degenerate("the branch cubic f is singular".into()))
        };
    }
    let eckardt = parts[3].is_zero() && parts[1].is_zero() && !parts[2].is_zero();
    if eckardt && f.is_odd() {
        if !plane_cubic_is_smooth(&parts[0])? {
            return Err(Error::Degenerate("the branch cubic C is singular".into()));
        }
        let (u, v) = line_basis(f, parts[2].coeffs())?;
        if !binary_squarefree(f, &parts[0].restrict_to_line(&u, &v)) {
            return Err(Error::Degenerate("the line L = 0 is tangent to C".into()));
        }
        return Ok(Certificate::EckardtShape);
    }
    let sing = singular_points(x, CERTIFY_DEPTH)?;
    match sing.first() {
        None => Ok(Certificate::Search(CERTIFY_DEPTH)),
        Some(p) => Err(Error::Degenerate(format!(
            "singular point of degree {} over {}",
            p.degree,
            p.field.literal()
        ))),
    }
}

pub fn is_smooth(x: &Form) -> Result<bool> {
    match certify_smooth(x) {
        Ok(_) => Ok(true),
        Err(Error::Degenerate(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_f5_is_smooth() {
        let f = Gf::prime(5).unwrap();
        let x = Form::from_terms(&f, 4, 3, &[(&[3, 0, 0, 0], 1), (&[0, 3, 0, 0], 1), (&[0, 0, 3, 0], 1), (&[0, 0, 0, 3], 1)]);
        assert!(singular_points(&x, 2).unwrap().is_empty());
        assert_eq!(certify_smooth(&x).unwrap(), Certificate::Cyclic);
    }

    #[test]
    fn cone_is_singular_at_apex() {
        let f = Gf::prime(5).unwrap();
        let x = Form::from_terms(&f, 4, 3, &[(&[3, 0, 0, 0], 1), (&[0, 3, 0, 0], 1), (&[0, 0, 3, 0], 1)]);
        let s = singular_points(&x, 1).unwrap();
        assert!(s.iter().any(|p| p.coords == vec![Fe::ZERO, Fe::ZERO, Fe::ZERO, f.one()] && p.degree == 1));
        assert!(!is_smooth(&x).unwrap());
    }

    #[test]
    fn eckardt_shape_agrees_with_search() {
        let f = Gf::prime(5).unwrap();
        let smooth = Form::from_terms(&f, 4, 3, &[(&[1, 0, 0, 2], 1), (&[3, 0, 0, 0], 1), (&[0, 3, 0, 0], 1), (&[0, 0, 3, 0], 1)]);
        assert_eq!(certify_smooth(&smooth).unwrap(), Certificate::EckardtShape);
        assert!(singular_points(&smooth, 2).unwrap().is_empty());
        // L = z is tangent to the smooth cubic y^2 z = x^3 + x z^2 at its flex.
        let tangent = Form::from_terms(&f, 4, 3, &[(&[0, 0, 1, 2], 1), (&[0, 2, 1, 0], 1), (&[3, 0, 0, 0], -1), (&[1, 0, 2, 0], -1)]);
        assert!(!is_smooth(&tangent).unwrap());
        assert!(!singular_points(&tangent, 2).unwrap().is_empty());
    }

    #[test]
    fn f2_normal_form_singular_over_f8() {
        let f2 = Gf::prime(2).unwrap();
        let x = Form::from_terms(
            &f2,
            4,
            3,
            &[(&[2, 1, 0, 0], 1), (&[0, 2, 1, 0], 1), (&[1, 0, 2, 0], 1), (&[1, 1, 0, 1], 1), (&[1, 0, 1, 1], 1), (&[0, 1, 1, 1], 1), (&[0, 0, 0, 3], 1)],
        );
        let s = singular_points(&x, 3).unwrap();
        let f8 = Gf::new(2, 3).unwrap();
        // xi = the generator of F_8, a root of x^3 + x + 1
        let xi = f8.generator();
        let target = vec![xi, f8.pow(xi, 2), f8.pow(xi, 4), f8.one()];
        assert!(s.iter().any(|p| p.degree == 3 && proj::same_point(&p.field, &p.coords, &target)));
        assert!(!is_smooth(&x).unwrap());
    }

    #[test]
    fn fermat_over_f2_is_smooth() {
        let f2 = Gf::prime(2).unwrap();
        assert!(singular_points(&crate::surface::fermat(&f2), 4).unwrap().is_empty());
    }
}
