use thiserror::Error;

/// Errors raised across the toolkit.
///
/// State indices and party indices carried by variants are 0-based; the
/// rendering layer converts them to 1-based labels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero or unnormalizable vector")]
    ZeroVector,

    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("invalid family parameters: {0}")]
    InvalidParams(String),

    #[error("states are not pairwise orthogonal: {pairs:?}")]
    NotOrthogonal { pairs: Vec<(usize, usize)> },

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("party index {party} out of range for {parties} parties")]
    PartyOutOfRange { party: usize, parties: usize },

    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),

    #[error("infeasible graph realization after {attempts} attempts")]
    Infeasible { attempts: usize },

    #[error("malformed protocol: {0}")]
    MalformedProtocol(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
