use thiserror::Error;

/// Errors shared across the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("metrics undefined for the zero syndrome")]
    UndefinedMetrics,
    #[error("vector is not a cycle (its syndrome is nonzero)")]
    NotACycle,
    #[error("not embeddable: {0}")]
    NotEmbeddable(String),
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("unsupported weight {weight} (oracle bound {bound})")]
    UnsupportedWeight { weight: usize, bound: usize },
    #[error("invalid blowup plan: {0}")]
    InvalidPlan(String),
    #[error("inconsistent blown estimate: odd parity-variable sum on a blown plaquette")]
    InconsistentEstimate,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
