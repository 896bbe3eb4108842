//! Finite fields, their embeddings, polynomials and small linear algebra.

pub mod embed;
pub mod field;
pub mod form;
pub mod linalg;
pub mod plane;
pub mod poly;
pub mod proj;
mod prime_poly;

pub use embed::{embed, Embedding};
pub use field::{Fe, Gf, LogTables};
pub use form::{monomials, Form};
pub use linalg::{det3, Matrix};
pub use plane::{
    binary_form_roots, binary_split_degree, binary_squarefree, common_zeros, hessian, line_basis, plane_singular_points,
    CommonZeros, ZeroSet,
};
pub use poly::{find_roots, find_roots_in, UniPoly};
pub(crate) use poly::lcm as poly_lcm;

use crate::error::Result;

/// F_{p^k} with its canonical modulus.
pub fn make_extension(p: u64, k: u32) -> Result<Gf> {
    Gf::new(p, k)
}
