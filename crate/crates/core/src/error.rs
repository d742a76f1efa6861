use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("substitution image {index} is not a unit monomial: {image}")]
    NonMonomialImage { index: usize, image: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid gamma list: {0}")]
    InvalidGamma(String),

    #[error("empty point configuration")]
    EmptyInput,

    #[error("polytope is not full-dimensional (dimension {dim} in ambient rank {ambient})")]
    NotFullDimensional { dim: usize, ambient: usize },

    #[error("enumeration budget of {budget} candidate points exceeded (needed {needed})")]
    BudgetExceeded { budget: u64, needed: u128 },

    #[error("dimension {0} is outside the supported range")]
    UnsupportedDimension(usize),

    #[error("series has {available} coefficients, {requested} requested")]
    SeriesTooShort { available: usize, requested: usize },

    #[error("rank-deficient configuration: rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("relation lattice has rank {0}, expected 1")]
    RelationRank(usize),

    #[error("nonzero GKZ parameter is not supported")]
    NonzeroBeta,

    #[error("coefficient denominator vanishes modulo {0}")]
    DenominatorVanishes(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("model is not fiberwise quadratic: {0}")]
    NotQuadratic(String),

    #[error("pivot {entry} is not invertible in the Laurent ring")]
    NonInvertiblePivot { entry: String },

    #[error("determinant vanishes identically")]
    ZeroDeterminant,

    #[error("chosen minor vanishes identically")]
    VanishingMinor,

    #[error("no common weighted degree: {0}")]
    NoCommonDegree(String),

    #[error("degenerate Newton polygon (dimension {0})")]
    DegeneratePolygon(usize),

    #[error("resultant vanishes identically in both elimination orders")]
    DegenerateElimination,

    #[error("Newton iteration did not converge (best residual {best_residual:e})")]
    NoConvergence { best_residual: f64 },

    #[error("continuation step {segment} failed: {reason}")]
    StepFailure { segment: usize, reason: String },

    #[error("multiprecision arithmetic: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
