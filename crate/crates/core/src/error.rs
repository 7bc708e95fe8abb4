use thiserror::Error;

/// Errors raised by the library.
///
/// `Verification` is special: it signals that an internal cross-check that
/// must hold as a theorem failed. Callers should treat it as a bug report,
/// never as bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GpiError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("operation is undefined on the empty partition")]
    EmptyPartition,
    #[error("partition {inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("non-integral or negative multiplicity {value} for {partition}")]
    BadMultiplicity { partition: String, value: String },
    #[error("axiom violated: {0}")]
    Axiom(String),
    #[error("W must be unital")]
    WNotUnital,
    #[error("algebra has no unity: {0}")]
    NoUnity(String),
    #[error("document error: {0}")]
    Document(String),
    #[error("polynomial is not multilinear: {0}")]
    NotMultilinear(String),
    #[error("polynomial is not multihomogeneous")]
    NotMultihomogeneous,
    #[error("ambient W mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, GpiError>;
