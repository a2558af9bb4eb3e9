use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharrepError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("corrupted character table: {0}")]
    CorruptTable(String),
    #[error("inner product is not a rational integer: {0}")]
    NonIntegral(String),
    #[error("class vectors belong to different tables")]
    MismatchedTables,
    #[error("irreducible index {0} out of range")]
    Index(usize),
    #[error("expected {expected} coefficients, got {got}")]
    Length { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Charrep(#[from] CharrepError),
    #[error("precondition violated: dim_class(omega) = {0}, expected 1")]
    NotDimensionOne(i64),
    #[error("quiver structure is not affine ADE: {0}")]
    NotAde(String),
    #[error("expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error("internal: {0} special vertices solve the decomposition, expected exactly one")]
    Uniqueness(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("gauge element at vertex {0} is singular")]
    Singular(usize),
    #[error("repeated eigenvalue {0} in Calogero-Moser data")]
    RepeatedEigenvalue(String),
    #[error("tau must be nonzero")]
    ZeroTau,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("cannot parse quiver data: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("degree cutoff must be nonnegative, got {0}")]
    NegativeCutoff(i64),
    #[error("group {0} is not cyclic")]
    NotCyclic(String),
    #[error("tau has {got} entries, expected {expected}")]
    TauLength { expected: usize, got: usize },
    #[error("missing quadratic dual data")]
    MissingDual,
    #[error("degree {0} exceeds the computed cutoff {1}")]
    Degree(usize, usize),
    #[error("invalid presentation: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonadError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("monads are only assembled over cyclic groups; got {0}")]
    Unsupported(String),
    #[error("monad is not certified: {0}")]
    Uncertified(String),
}
