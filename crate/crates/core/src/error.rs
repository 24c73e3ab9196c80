use thiserror::Error;

/// Errors raised by the algebra kernel and the resolution pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),

    #[error("degenerate blowup: {0}")]
    DegenerateBlowup(String),

    #[error("chart ring is not known to be integral; decompose first ({0})")]
    DecomposeFirst(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("out of scope: {0}")]
    Scope(String),

    #[error("certificate failed: {0}")]
    CertificateFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
