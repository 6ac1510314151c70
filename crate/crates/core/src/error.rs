use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid lattice graph: {0}")]
    InvalidGraph(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("system too large: {what} (limit {limit})")]
    SizeLimit { what: String, limit: usize },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("sample set incomplete: {0}")]
    IncompleteSamples(String),

    #[error("non-positive partition function estimate {0}")]
    NonPositivePartition(f64),

    #[error("no solution in bracket: {0}")]
    NoSolution(String),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
