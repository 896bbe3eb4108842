//! Cubic surfaces in P^3: counting, smoothness, Eckardt points and twists,
//! branch-data constructions and cyclic surfaces.

pub mod count;
pub mod cyclic;
pub mod eckardt;
pub mod io;
pub mod singular;

pub use count::{count_naive, count_points, count_points_with_budget, count_profile, fiber_steps, DEFAULT_BUDGET};
pub use cyclic::{count_cyclic, cyclic_surface, eckardt_points_on_hyperplane_curve, EckardtPoints};
pub use eckardt::{
    build_from_branch_data, distinguished_lines, double_twist_equivalence, is_eckardt, normalize_eckardt, quadratic_twist,
    twist_by, CoordinateChange, DistinguishedLine, DistinguishedLines, EckardtForm, EckardtNormalization,
};
pub use io::{format_form, parse_form};
pub use singular::{certify_smooth, is_smooth, plane_cubic_is_smooth, singular_points, Certificate, SingularPoint};

use crate::algebra::{Form, Gf};

pub const SURFACE_VARS: [&str; 4] = ["x", "y", "z", "t"];
pub const PLANE_VARS: [&str; 3] = ["x", "y", "z"];

/// x^3 + y^3 + z^3 + t^3.
pub fn fermat(f: &Gf) -> Form {
    Form::from_terms(f, 4, 3, &[(&[3, 0, 0, 0], 1), (&[0, 3, 0, 0], 1), (&[0, 0, 3, 0], 1), (&[0, 0, 0, 3], 1)])
}
