use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("form is degenerate (zero determinant)")]
    Degenerate,
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("vectors belong to different lattices")]
    LatticeMismatch,
    #[error("vector has length {got}, lattice rank is {rank}")]
    WrongLength { got: usize, rank: usize },
    #[error("zero vector")]
    ZeroVector,
    #[error("input vectors are linearly dependent")]
    DependentInput,
    #[error("lattice is not definite")]
    NotDefinite,
    #[error("lattice is not hyperbolic (signature (1,1) required)")]
    NotHyperbolic,
    #[error("empty pairing window: lo = {lo} > hi = {hi}")]
    UnboundedWindow { lo: String, hi: String },
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("matrix is not an isometry: {0}")]
    NotIsometry(String),
    #[error("reflection is not integral on this lattice")]
    NotIntegral,
    #[error("cannot reflect in an isotropic vector")]
    IsotropicMirror,
    #[error("invalid transvection pair: {0}")]
    BadPair(String),
    #[error("vector has divisibility {0}, expected 1")]
    DivisibilityNotOne(String),
    #[error("lattice has no declared U+U split in its first four coordinates")]
    NoSplitDeclared,
    #[error("vectors are not in the same orbit: {0}")]
    NotEquivalent(String),
    #[error("c1 has odd square")]
    OddSquare,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("class lies on a wall")]
    OnWall,
    #[error("invalid witness: {0}")]
    BadWitness(String),
    #[error("invalid fixture: {0}")]
    FixtureInvalid(String),
    #[error("no admissible F: {0}")]
    NoSuchF(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
