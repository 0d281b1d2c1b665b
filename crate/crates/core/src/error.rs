use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("graph contains a cycle through node {0}")]
    CycleDetected(usize),

    #[error("node {node} out of range for a graph with {len} nodes")]
    NodeOutOfRange { node: usize, len: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("empty region")]
    EmptyRegion,

    #[error("consecutive chain points {0} and {1} are not causally related")]
    NonCausalChain(usize, usize),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("degenerate weights: {0}")]
    DegenerateWeights(String),

    #[error("no causal coupling exists between the given measures")]
    NoCausalCoupling,

    #[error("solver failed to converge: {0}")]
    SolverFailure(String),

    #[error("space does not provide geodesic evaluation; lift the plan in the ambient continuum space")]
    GeodesicsUnavailable,

    #[error("non-uniform t-grid")]
    NonUniformGrid,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parameters outside every admissible regime: {0}")]
    OutOfRegime(String),

    #[error("model density has no zero (out of regime): {0}")]
    NoZero(String),

    #[error("integration step too coarse: discrepancy {discrepancy:.3e} between step and half step")]
    StepTooCoarse { discrepancy: f64 },

    #[error("maximization over the achronal set is unbounded near {0:?}")]
    UnboundedMaximization(Vec<f64>),

    #[error("no chronological point of the achronal set lies below the probe")]
    NoFootpoint,

    #[error("zero hits in the denominator region")]
    ZeroHits,

    #[error("serialization: {0}")]
    Serialization(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
