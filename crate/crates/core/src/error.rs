use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("inner shape {inner} is not contained in outer shape {outer}")]
    Containment { inner: String, outer: String },

    #[error("maya window [{lo}, {hi}) too narrow; need at least [{need_lo}, {need_hi})")]
    WindowTooNarrow {
        lo: i64,
        hi: i64,
        need_lo: i64,
        need_hi: i64,
    },

    #[error("maya word does not encode a diagram: {0}")]
    InvalidMaya(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("size limit exceeded: {what} = {size} > {cap}")]
    SizeLimit {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("expected {expected} points, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("gauge violates the face condition on face {face}")]
    Gauge { face: String },

    #[error("Kasteleyn matrix is singular: boundary conditions admit no evolution")]
    Singular,

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("independent counts disagree: {0}")]
    CountMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
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

pub type Result<T> = std::result::Result<T, Error>;
