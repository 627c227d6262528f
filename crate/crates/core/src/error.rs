use thiserror::Error;

/// Errors raised by partition construction, field handling, the sum
/// variants and the verification harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate box: axis {axis} has lower {lower} >= upper {upper}")]
    DegenerateBox { axis: usize, lower: f64, upper: f64 },

    #[error("box dimension {0} outside the supported range 1..=8")]
    UnsupportedDimension(usize),

    #[error("partition would have {cells} cells, cap is {cap}")]
    CountOverflow { cells: u128, cap: u64 },

    #[error("invalid breakpoints on axis {axis}: {reason}")]
    InvalidBreakpoints { axis: usize, reason: String },

    #[error("jitter amplitude gamma = {0} must lie in [0, 1)")]
    InvalidGamma(f64),

    #[error("tag of cell {cell} escapes the intersection of its base and perturbed cells")]
    TagEscape { cell: usize },

    #[error("invalid deletion schedule: {0}")]
    InvalidSchedule(String),

    #[error("deletion needs at least 2 cells, partition has {0}")]
    TooFewCells(usize),

    #[error("largest-term selector requires per-cell term magnitudes")]
    MissingTerms,

    #[error("term magnitude list has {got} entries, partition has {expected} cells")]
    TermCountMismatch { expected: usize, got: usize },

    #[error("vanishing-fraction schedules only apply to equal partitions")]
    NonEqualPartition,

    #[error("deletion plan is not bound to this partition")]
    UnboundPlan,

    #[error("sum is not finite")]
    NonFiniteSum,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("partition does not cover the expected domain: {0}")]
    DomainMismatch(String),

    #[error("corner parameter {0} is not a partition breakpoint")]
    CornerNotBreakpoint(f64),

    #[error("surface normal vanishes at parameter ({0}, {1})")]
    DegenerateNormal(f64, f64),

    #[error("orientation check failed: {0}")]
    OrientationCheckFailed(String),

    #[error("boundary has {expected} pieces, {got} discretizations supplied")]
    BoundaryCountMismatch { expected: usize, got: usize },

    #[error("field check failed: {0}")]
    FieldCheck(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("resolution list must be strictly ascending with at least 3 entries")]
    NonMonotoneMList,

    #[error("scenario `{scenario}` does not support {what}")]
    Unsupported { scenario: String, what: String },

    #[error("i/o failure: {0}")]
    IoFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
