use thiserror::Error;

/// Errors raised by problem construction, sampling and scalarization.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MooError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid problem definition: {0}")]
    InvalidProblem(String),

    #[error("invalid goal: {0}")]
    InvalidGoal(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid direction: {0}")]
    InvalidDirection(String),

    #[error("value is not a number")]
    NotANumber,

    #[error("empty input")]
    EmptyInput,

    #[error("search grid is empty")]
    EmptyGrid,

    #[error("all {0} grid points are infeasible")]
    AllInfeasible(usize),

    #[error("lambda_max too small: {0} times the direction is attainable")]
    LambdaMaxTooSmall(f64),

    #[error("eps must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("unsupported objective count {0} for direction generation (at most 3)")]
    UnsupportedObjectiveCount(usize),

    #[error("over-constrained: {0}")]
    OverConstrained(String),

    #[error("invalid refinement: {0}")]
    InvalidRefinement(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible resource point: {0}")]
    InfeasiblePoint(String),

    #[error("unknown format `{0}`")]
    UnknownFormat(String),

    #[error("serialization: {0}")]
    Serialization(String),

    #[error("cancelled")]
    Cancelled,
}

pub type Result<T, E = MooError> = std::result::Result<T, E>;
