//! The 27 lines on a cubic surface and the Weyl group W(E6) acting on them.

pub mod group;
pub mod intpoly;
pub mod lemmas;
pub mod lines;
pub mod table;

pub use group::{charpoly_k_perp, invariant_rank, weyl, ClassId, ClassRecord, Order3Type, WeylGroup};
pub use lemmas::{verify_structure_lemmas, LemmaCheck, StructureReport};
pub use lines::{intersection_number, pairing, reflection, simple_roots, LineLabel, LinePerm, PicVec};
