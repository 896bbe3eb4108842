//! Cyclic cubic surfaces f(x,y,z) + t^3 = 0 and their Eckardt points on the
//! curve t = 0.

use crate::algebra::{proj, Fe, Form, Gf};
use crate::ec::inflection_points;
use crate::error::{Error, Result};

use super::count::{fiber_steps, DEFAULT_BUDGET};
use super::eckardt::is_eckardt;
use super::singular::plane_cubic_is_smooth;

fn check_cyclic_input(f: &Form) -> Result<()> {
    if f.nvars() != 3 || f.degree() != 3 {
        return Err(Error::Invalid("expected a plane cubic in x, y, z".into()));
    }
    let p = f.field().p();
    if p == 2 || p == 3 {
        return Err(Error::RefusedScope(format!("cyclic cubic surfaces are treated only outside characteristic 2 and 3, got {p}")));
    }
    Ok(())
}

/// The surface f + t^3 for a smooth plane cubic f.
pub fn cyclic_surface(f: &Form) -> Result<Form> {
    check_cyclic_input(f)?;
    if !plane_cubic_is_smooth(f)? {
        return Err(Error::Degenerate("the plane cubic f is singular".into()));
    }
    let mut x = Form::zero(f.field(), 4, 3);
    for (e, c) in f.terms() {
        x.set_coeff(&[e[0], e[1], e[2], 0], c).expect("cubic monomial");
    }
    x.set_coeff(&[0, 0, 0, 3], f.field().one()).expect("cubic monomial");
    Ok(x)
}

/// N_d of f + t^3: one census of cube roots of -f per point of P^2.
pub fn count_cyclic(f: &Form, d: u32) -> Result<u128> {
    check_cyclic_input(f)?;
    let needed = fiber_steps(f.field().order(), d);
    if needed > DEFAULT_BUDGET {
        return Err(Error::BudgetExceeded { needed, budget: DEFAULT_BUDGET });
    }
    let ext = f.field().extension(d)?;
    let g = f.over(&ext)?;
    Ok(proj::points(&ext, 3).map(|b| ext.cube_root_census(ext.neg(g.eval(&b))) as u128).sum())
}

#[derive(Clone, Debug)]
pub struct EckardtPoints {
    pub field: Gf,
    /// Points (x:y:z:0) of f + t^3.
    pub points: Vec<Vec<Fe>>,
    /// Orbits of the q-power Frobenius, as index lists.
    pub orbits: Vec<Vec<usize>>,
}

impl EckardtPoints {
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.orbits.iter().map(|o| o.len()).collect();
        s.sort();
        s
    }
}

/// The Eckardt points of f + t^3 on t = 0: the lifts of the inflection
/// points of f, each confirmed by the Eckardt criterion.
pub fn eckardt_points_on_hyperplane_curve(f: &Form) -> Result<EckardtPoints> {
    let x = cyclic_surface(f)?;
    let infl = inflection_points(f)?;
    let ext = infl.field.clone();
    let xe = x.over(&ext)?;
    let points: Vec<Vec<Fe>> = infl.points.iter().map(|p| vec![p[0], p[1], p[2], Fe::ZERO]).collect();
    for p in &points {
        if !is_eckardt(&xe, p)? {
            return Err(Error::Verification("a lifted inflection point is not an Eckardt point".into()));
        }
    }
    let orbits = infl.frobenius_orbits(f.field().degree());
    Ok(EckardtPoints { field: ext, points, orbits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::count_points;

    fn fermat_curve(f: &Gf) -> Form {
        Form::from_terms(f, 3, 3, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1)])
    }

    #[test]
    fn census_matches_general_counter() {
        let f5 = Gf::prime(5).unwrap();
        let c = fermat_curve(&f5);
        let x = cyclic_surface(&c).unwrap();
        for d in 1..=2 {
            assert_eq!(count_cyclic(&c, d).unwrap(), count_points(&x, d).unwrap());
        }
        // 5 = 2 mod 3: cubing is a bijection, one t per base point.
        assert_eq!(count_cyclic(&c, 1).unwrap(), 31);
    }

    #[test]
    fn fermat_over_f7_has_nine_eckardt_points_on_t0() {
        let f7 = Gf::prime(7).unwrap();
        let e = eckardt_points_on_hyperplane_curve(&fermat_curve(&f7)).unwrap();
        assert_eq!(e.points.len(), 9);
        assert!(e.orbit_sizes().iter().all(|&s| s == 1 || s == 3));
        assert_eq!(e.orbit_sizes().iter().sum::<usize>(), 9);
    }

    #[test]
    fn small_characteristic_refused() {
        let f3 = Gf::prime(3).unwrap();
        assert!(matches!(cyclic_surface(&fermat_curve(&f3)), Err(Error::RefusedScope(_))));
    }
}
