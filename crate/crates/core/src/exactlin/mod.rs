//! Exact arithmetic over ℚ(i) and sparse linear algebra.

mod elim;
mod scalar;
mod sparse;

pub use elim::{coordinates, determinant, kernel_basis, rank, solve, Echelon};
pub use scalar::Scalar;
pub use sparse::{SparseMatrix, SparseVector};
