//! Exact point counts of cubic surfaces over F_{q^d}.
//!
//! Points (x:y:z:t) with (x,y,z) != 0 fiber over P^2: for a normalized base
//! point the admissible t are the roots in F_Q of a polynomial of degree <= 3.
//! If the surface contains (0:0:0:1) there is no t^3 term and every fiber is
//! at most quadratic, so its roots are counted with one character value. A
//! surface without that point is either moved there by an F_q-linear change
//! (every cubic form over F_q has a rational zero) or, for the shape
//! `f + c t^3`, counted with the cube-root census.

use rayon::prelude::*;

use crate::algebra::{proj, Fe, Form, Gf, LogTables};
use crate::error::{Error, Result};
use crate::zeta::CountProfile;

/// Default ceiling on fiber steps |P^2(F_{q^d})|.
pub const DEFAULT_BUDGET: u128 = 20_000_000_000;

/// Size of the fiber base, i.e. the work needed to count over F_{q^d}.
pub fn fiber_steps(q: u64, d: u32) -> u128 {
    (q as u128)
        .checked_pow(d)
        .and_then(|big| big.checked_mul(big).map(|s| s + big + 1))
        .unwrap_or(u128::MAX)
}

pub(crate) fn check_surface(x: &Form) -> Result<()> {
    if x.nvars() != 4 || x.degree() != 3 {
        return Err(Error::Invalid("expected a cubic form in x, y, z, t".into()));
    }
    if x.is_zero() {
        return Err(Error::Invalid("the zero form does not define a surface".into()));
    }
    Ok(())
}

pub fn count_points(x: &Form, d: u32) -> Result<u128> {
    count_points_with_budget(x, d, DEFAULT_BUDGET)
}

pub fn count_points_with_budget(x: &Form, d: u32, budget: u128) -> Result<u128> {
    check_surface(x)?;
    if d == 0 {
        return Err(Error::Invalid("depth must be at least 1".into()));
    }
    let base = x.field();
    let needed = fiber_steps(base.order(), d);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let shape = Shape::of(x);
    let prepared = match shape {
        Shape::Cyclic | Shape::OnAxis => x.clone(),
        Shape::General => move_rational_point_to_axis(x)?,
    };
    let ext = base.extension(d)?;
    let form = prepared.over(&ext)?;
    let tables = ext.tables().ok_or_else(|| {
        Error::Unsupported(format!("counting over {} needs a tabled field", ext.literal()))
    })?;
    Ok(match shape {
        Shape::Cyclic => cyclic_kernel(&form, tables),
        _ => quadratic_kernel(&form, tables, &ext),
    })
}

/// N_1..N_depth.
pub fn count_profile(x: &Form, depth: usize, budget: u128) -> Result<CountProfile> {
    let counts = (1..=depth as u32)
        .map(|d| count_points_with_budget(x, d, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountProfile { q: x.field().order(), counts })
}

/// Direct enumeration of P^3(F_{q^d}).
pub fn count_naive(x: &Form, d: u32) -> Result<u128> {
    check_surface(x)?;
    let ext = x.field().extension(d)?;
    let form = x.over(&ext)?;
    Ok(proj::points(&ext, 4).filter(|p| form.eval(p).is_zero()).count() as u128)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Shape {
    /// No t^3 term: (0:0:0:1) lies on the surface.
    OnAxis,
    /// `f(x,y,z) + c t^3` with c != 0.
    Cyclic,
    General,
}

impl Shape {
    fn of(x: &Form) -> Shape {
        if x.coeff(&[0, 0, 0, 3]).is_zero() {
            return Shape::OnAxis;
        }
        let other_t = x.terms().any(|(e, c)| !c.is_zero() && e[3] > 0 && e[3] < 3);
        if other_t {
            Shape::General
        } else {
            Shape::Cyclic
        }
    }
}

/// Sends the first F_q-point of X to (0:0:0:1) by a linear change.
fn move_rational_point_to_axis(x: &Form) -> Result<Form> {
    let f = x.field();
    let p = proj::points(f, 4)
        .find(|p| x.eval(p).is_zero())
        .ok_or_else(|| Error::Verification("cubic form without a rational zero".into()))?;
    let lead = p.iter().position(|c| !c.is_zero()).expect("projective point");
    // New coordinates: the standard basis with e_lead replaced by p, which
    // is moved to the last slot.
    let mut cols: Vec<Vec<Fe>> = (0..4)
        .filter(|&j| j != lead)
        .map(|j| {
            let mut e = vec![Fe::ZERO; 4];
            e[j] = f.one();
            e
        })
        .collect();
    cols.push(p);
    let m: Vec<Vec<Fe>> = (0..4).map(|i| (0..4).map(|j| cols[j][i]).collect()).collect();
    Ok(x.substitute(&m))
}

/// Log-domain coefficients of `h(x0, y0, z)` as a polynomial in z, for a
/// form `h` in (x, y, z) given by (exponents, log coefficient) pairs.
fn row_poly(terms: &[([u8; 3], u32)], deg: usize, x0: u32, y0: u32, t: &LogTables) -> Vec<u32> {
    let mut out = vec![t.zero(); deg + 1];
    for &(e, c) in terms {
        let v = t.mul(c, t.mul(t.pow(x0, e[0] as u64), t.pow(y0, e[1] as u64)));
        let slot = &mut out[e[2] as usize];
        *slot = t.add(*slot, v);
    }
    out
}

/// Coefficients of t^j as forms in (x, y, z), in log form.
fn t_slices(form: &Form, t: &LogTables) -> [Vec<([u8; 3], u32)>; 4] {
    let mut out: [Vec<([u8; 3], u32)>; 4] = Default::default();
    for (e, c) in form.terms() {
        if !c.is_zero() {
            out[e[3] as usize].push(([e[0], e[1], e[2]], t.to_log(c)));
        }
    }
    out
}

#[inline]
fn eval_row(p: &[u32], z: &[u32; 4], t: &LogTables) -> u32 {
    let mut acc = p[0];
    for i in 1..p.len() {
        acc = t.add(acc, t.mul(p[i], z[i]));
    }
    acc
}

/// Row bases: (x0, y0) with z free. (1, y0) for every y0, then (0, 1).
fn rows(t: &LogTables, q: u64) -> Vec<(u32, u32)> {
    let mut r: Vec<(u32, u32)> = (0..q).map(|i| (t.one(), t.to_log(Fe::from_index(i)))).collect();
    r.push((t.zero(), t.one()));
    r
}

fn z_powers(t: &LogTables, q: u64) -> Vec<[u32; 4]> {
    (0..q)
        .map(|i| {
            let l = t.to_log(Fe::from_index(i));
            [t.one(), l, t.mul(l, l), t.mul(l, t.mul(l, l))]
        })
        .collect()
}

/// Surfaces with no t^3 term. Fibers are `A t^2 + B t + C`.
fn quadratic_kernel(form: &Form, t: &LogTables, field: &Gf) -> u128 {
    let q = field.order();
    let slices = t_slices(form, t);
    let zs = z_powers(t, q);
    let odd = field.is_odd();
    let four = t.to_log(field.from_int(4));
    let trace_mask = if odd { 0 } else { trace_mask(field) };
    let whole = q;

    let fiber = |a: u32, b: u32, c: u32| -> u64 {
        let zero = t.zero();
        if a == zero {
            return if b != zero {
                1
            } else if c == zero {
                whole
            } else {
                0
            };
        }
        if odd {
            let disc = t.sub(t.mul(b, b), t.mul(four, t.mul(a, c)));
            if disc == zero {
                1
            } else if disc % 2 == 0 {
                2
            } else {
                0
            }
        } else {
            if b == zero {
                return 1;
            }
            // t = (b/a) u turns the fiber into u^2 + u + ac/b^2.
            let k = t.mul(t.mul(a, c), t.inv(t.mul(b, b)));
            let idx = t.from_log(k).index();
            if (idx & trace_mask).count_ones() % 2 == 0 {
                2
            } else {
                0
            }
        }
    };

    let count_row = |(x0, y0): (u32, u32)| -> u128 {
        let a = row_poly(&slices[2], 1, x0, y0, t);
        let b = row_poly(&slices[1], 2, x0, y0, t);
        let c = row_poly(&slices[0], 3, x0, y0, t);
        let mut n = 0u64;
        for z in &zs {
            n += fiber(eval_row(&a, z, t), eval_row(&b, z, t), eval_row(&c, z, t));
        }
        n as u128
    };

    let mut total: u128 = rows(t, q).into_par_iter().map(count_row).sum();
    // Base point (0:0:1).
    let coef = |s: &[([u8; 3], u32)], e: [u8; 3]| s.iter().find(|x| x.0 == e).map_or(t.zero(), |x| x.1);
    total += fiber(coef(&slices[2], [0, 0, 1]), coef(&slices[1], [0, 0, 2]), coef(&slices[0], [0, 0, 3])) as u128;
    // The apex (0:0:0:1).
    total + 1
}

/// Surfaces `f + c t^3`: t^3 = -f/c has census-many solutions per fiber.
fn cyclic_kernel(form: &Form, t: &LogTables) -> u128 {
    let field = form.field();
    let q = field.order();
    let slices = t_slices(form, t);
    let zs = z_powers(t, q);
    let c3 = t.to_log(form.coeff(&[0, 0, 0, 3]));
    let scale = t.neg(t.inv(c3));
    let cubes_split = q % 3 == 1;
    let census = |v: u32| -> u64 {
        if v == t.zero() || !cubes_split {
            1
        } else if v % 3 == 0 {
            3
        } else {
            0
        }
    };
    let count_row = |(x0, y0): (u32, u32)| -> u128 {
        let f: Vec<u32> = row_poly(&slices[0], 3, x0, y0, t).into_iter().map(|c| t.mul(c, scale)).collect();
        zs.iter().map(|z| census(eval_row(&f, z, t))).sum::<u64>() as u128
    };
    let total: u128 = rows(t, q).into_par_iter().map(count_row).sum();
    let last = slices[0].iter().find(|x| x.0 == [0, 0, 3]).map_or(t.zero(), |x| x.1);
    total + census(t.mul(last, scale)) as u128
}

/// Bit mask m with Tr(a) = parity(index(a) & m) over F_2.
fn trace_mask(field: &Gf) -> u64 {
    let k = field.degree();
    let mut mask = 0u64;
    for i in 0..k {
        let a = Fe::from_index(1 << i);
        let mut s = a;
        let mut acc = a;
        for _ in 1..k {
            s = field.square(s);
            acc = field.add(acc, s);
        }
        if acc == field.one() {
            mask |= 1 << i;
        }
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat(f: &Gf) -> Form {
        Form::from_terms(f, 4, 3, &[(&[3, 0, 0, 0], 1), (&[0, 3, 0, 0], 1), (&[0, 0, 3, 0], 1), (&[0, 0, 0, 3], 1)])
    }

    #[test]
    fn fermat_small_fields() {
        let f2 = Gf::prime(2).unwrap();
        assert_eq!(count_points(&fermat(&f2), 1).unwrap(), 7);
        assert_eq!(count_naive(&fermat(&f2), 1).unwrap(), 7);
        let f4 = Gf::new(2, 2).unwrap();
        assert_eq!(count_points(&fermat(&f4), 1).unwrap(), 45);
        assert_eq!(count_naive(&fermat(&f4), 1).unwrap(), 45);
        assert_eq!(count_points(&fermat(&f2), 2).unwrap(), 45);
    }

    #[test]
    fn shapes_agree_with_enumeration() {
        let f5 = Gf::prime(5).unwrap();
        let eck = Form::from_terms(&f5, 4, 3, &[(&[1, 0, 0, 2], 1), (&[3, 0, 0, 0], 1), (&[0, 2, 1, 0], 2), (&[0, 0, 3, 0], 1), (&[1, 1, 1, 0], 3)]);
        let general = eck.add(&Form::from_terms(&f5, 4, 3, &[(&[0, 0, 0, 3], 2), (&[0, 1, 0, 2], 1), (&[1, 0, 1, 1], 4)]));
        for x in [fermat(&f5), eck, general] {
            for d in 1..=2 {
                assert_eq!(count_points(&x, d).unwrap(), count_naive(&x, d).unwrap(), "{}", x.display(&["x", "y", "z", "t"]));
            }
        }
    }

    #[test]
    fn budget_refusal_names_size() {
        let f7 = Gf::prime(7).unwrap();
        match count_points_with_budget(&fermat(&f7), 2, 1000) {
            Err(Error::BudgetExceeded { needed, budget }) => {
                assert_eq!(needed, 49 * 49 + 49 + 1);
                assert_eq!(budget, 1000);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn f2_trace_mask() {
        let f8 = Gf::new(2, 3).unwrap();
        let m = trace_mask(&f8);
        let ones = f8.elements().filter(|a| (a.index() & m).count_ones() % 2 == 1).count();
        assert_eq!(ones, 4);
    }
}
