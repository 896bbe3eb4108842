//! Cubic surfaces as blowups of P^2 at two Frobenius orbits of three points,
//! the resulting c10 construction for odd q, and the exhaustive checks over
//! F_2.

pub mod anticanonical;
pub mod f2;
pub mod sixpoint;

pub use anticanonical::{anticanonical_surface, c10_pipeline, combinatorial_count, cubics_through, AnticanonicalMap, C10Construction};
pub use sixpoint::{check_structure, choose_parameters, conic_rank, general_position, GeneralPosition, SixPointData, Violation};
pub use f2::{f2_normal_form, f2_normal_form_singular_points, f2_one_point_cubics, f2_scan, F2ScanReport, OnePointReport};
