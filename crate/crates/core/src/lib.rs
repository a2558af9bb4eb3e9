//! Exact computations around McKay quivers: character tables of finite
//! subgroups of SL₂(ℂ), affine root lattices, Nakajima quiver data,
//! graded preprojective algebras with Koszul checks, and ADHM-type monads.

pub mod charrep;
pub mod cyclotomic;
pub mod error;
pub mod graded_algebra;
pub mod linalg;
pub mod mckay_lattice;
pub mod monad;
pub mod quiver_data;
pub mod scalar;

pub use scalar::ExactField;

/// Rational scalars used throughout the crate.
pub type Rational = num_rational::BigRational;
/// Dense rational matrix.
pub type QMatrix = linalg::Matrix<Rational>;
/// Rational subspace.
pub type QSubspace = linalg::Subspace<Rational>;
