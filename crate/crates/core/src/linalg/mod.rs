//! Exact linear algebra over any [`ExactField`](crate::scalar::ExactField).

mod matrix;
pub mod sparse;
mod subspace;

pub use matrix::Matrix;
pub use sparse::{Echelon, SparseMatrix, SparseVec};
pub use subspace::Subspace;
