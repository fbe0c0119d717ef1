use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch in {op}: {detail}")]
    Dimension { op: &'static str, detail: String },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("malformed group: {0}")]
    MalformedGroup(String),

    #[error("matrix closure exceeded {limit} elements")]
    GroupTooLarge { limit: usize },

    #[error("not a homomorphism: images disagree on the product of elements {left} and {right}")]
    NotAHomomorphism { left: usize, right: usize },

    #[error("similitude character l is required but absent")]
    MissingSimilitude,

    #[error("similitude character l is not a homomorphism: {0}")]
    InvalidSimilitude(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("orthogonal sampler failed after {attempts} attempts")]
    SamplerFailure { attempts: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
