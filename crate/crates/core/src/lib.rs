//! Orthogonality of Construction-A lattices `C + qZⁿ` for binary and ternary
//! linear codes `C`.
//!
//! A lattice of this form has an orthogonal basis exactly when its code splits,
//! up to a permutation of coordinates, into a direct product of tiny factors:
//! `{0}`, `F_q`, and either `{00,11}` (q = 2) or a signed column permutation
//! of the `[4,2]` tetracode block `M` (q = 3). [`decide`] finds such a split
//! in polynomial time and returns the matching orthogonal basis.
//!
//! ```
//! use ortho_lattice::{decide, FieldOrder, IntMatrix};
//!
//! // C = {00, 11}: the lattice is spanned by (1,1) and (0,2).
//! let b = IntMatrix::from_i64(&[[1, 1], [0, 2]]);
//! let verdict = decide(&b, FieldOrder::Binary).unwrap();
//! assert_eq!(
//!     verdict.basis().unwrap().basis(),
//!     &IntMatrix::from_i64(&[[1, 1], [1, -1]])
//! );
//! ```

pub mod cli;
pub mod code_lattice;
pub mod decompose_binary;
pub mod decompose_ternary;
pub mod error;
pub mod exact_linalg;
pub mod exec;
mod greedy;
pub mod orthogonality;
pub mod weighing;

pub use code_lattice::{
    basis_to_code, code_to_basis, project_code, same_lattice, validate, LatticeBasis, LinearCode,
};
pub use error::{Error, Result};
pub use exact_linalg::{FieldOrder, FqMatrix, IntMatrix};
pub use exec::Exec;
pub use orthogonality::{
    assemble_basis, brute_force_orthogonal, cvp_exhaustive, cvp_round, decide, decide_with,
    gen_instance, verify_orthogonal_basis, Decomposition, InstanceSpec, OrthogonalBasis, Verdict,
};
