//! Elliptic curves as plane cubics: group law, Weierstrass models, plane
//! models from divisors, inflection points and the constructions of curves
//! with prescribed torsion that feed the cyclic and Eckardt surfaces.

pub mod curve;
pub mod embedding;
pub mod inflection;
pub mod recipes;
pub mod weierstrass;

pub use curve::{CurveWithBase, Point};
pub use embedding::{embed_by_divisor, Divisor, DivisorEmbedding};
pub use inflection::{inflection_points, Inflections};
pub use weierstrass::{deuring_admissible, search_curve_with_trace, TorsionProfile, Weierstrass, WeilData, ENUMERATION_LIMIT};
pub use recipes::{cyclic_trace, recipe_c11_c12, recipe_c13, recipe_c14, BranchRecipe, CyclicRecipe};
