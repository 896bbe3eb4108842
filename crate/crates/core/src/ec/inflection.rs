//! The nine inflection points of a smooth plane cubic, as C meets its
//! Hessian, cross-checked against the group law.

use crate::algebra::{common_zeros, hessian, CommonZeros, Form, Gf};
use crate::error::{Error, Result};

use super::curve::{CurveWithBase, Point};

#[derive(Clone, Debug)]
pub struct Inflections {
    /// Field holding all nine points.
    pub field: Gf,
    pub points: Vec<Point>,
}

/// Inflection points of the smooth plane cubic `c` (characteristic >= 5).
/// With one flex O as base point the others are exactly the P with 3P = O,
/// which is checked for every point found.
pub fn inflection_points(c: &Form) -> Result<Inflections> {
    let f = c.field();
    if f.p() < 5 {
        return Err(Error::Unsupported("inflection points via the Hessian need characteristic >= 5".into()));
    }
    let z = match common_zeros(&[c.clone(), hessian(c)])? {
        CommonZeros::Finite(z) => z,
        CommonZeros::Infinite => return Err(Error::Degenerate("the cubic shares a component with its Hessian".into())),
    };
    if z.points.len() != 9 {
        return Err(Error::Verification(format!("found {} inflection points instead of 9", z.points.len())));
    }
    let e = CurveWithBase::new(c.over(&z.field)?, &z.points[0])?;
    let s = e.hyperplane_sum()?;
    if s != *e.base() {
        return Err(Error::Verification("the tangent at a flex meets the curve again".into()));
    }
    for p in &z.points {
        if e.mul(3, p)? != s {
            return Err(Error::Verification("an inflection point fails 3P = hyperplane sum".into()));
        }
    }
    Ok(Inflections { field: z.field, points: z.points })
}

impl Inflections {
    /// Orbits of the q-power Frobenius, q = p^base_degree, as index lists.
    pub fn frobenius_orbits(&self, base_degree: u32) -> Vec<Vec<usize>> {
        let f = &self.field;
        let step = |p: &Point| crate::algebra::proj::normalize(f, &crate::algebra::proj::frobenius_point(f, p, base_degree));
        let mut seen = vec![false; self.points.len()];
        let mut out = Vec::new();
        for i in 0..self.points.len() {
            if seen[i] {
                continue;
            }
            let mut orbit = vec![i];
            seen[i] = true;
            let mut cur = step(&self.points[i]);
            while cur != self.points[i] {
                let j = self.points.iter().position(|p| *p == cur).expect("Frobenius permutes the flexes");
                seen[j] = true;
                orbit.push(j);
                cur = step(&cur);
            }
            out.push(orbit);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ec::search_curve_with_trace;

    #[test]
    fn nine_flexes_and_rational_count() {
        let w = search_curve_with_trace(7, 2).unwrap();
        let infl = inflection_points(&w.form()).unwrap();
        assert!(infl.points.contains(&w.origin()));
        assert_eq!(infl.points.len(), 9);
        let orbits = infl.frobenius_orbits(1);
        assert_eq!(orbits.iter().map(|o| o.len()).sum::<usize>(), 9);
        // Rational flexes are the rational 3-torsion: E(F_7) has 6 points.
        assert_eq!(orbits.iter().filter(|o| o.len() == 1).count(), 3);
    }
}
