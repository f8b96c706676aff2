//! Exact integer and F₂/F₃ linear algebra.
//!
//! Integer matrices use arbitrary-precision entries throughout; there is no
//! floating point anywhere in this module.

mod fq;
mod hnf;
mod int_matrix;

pub use fq::{in_code, parity_check, rref_fq, FieldOrder, FqMatrix};
pub use hnf::{determinant, hnf, hnf_with_modulus, solve_integral, LatticeCoordinates};
pub use int_matrix::{dot, norm_sq, IntMatrix};
