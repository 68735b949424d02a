use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("axis {axis} out of range 1..={n}")]
    InvalidAxis { axis: usize, n: usize },
    #[error("point {point} does not fit shape {shape}")]
    PointOutOfShape { point: String, shape: String },
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("points {a} and {b} are not connected within the set")]
    NotConnected { a: String, b: String },
    #[error("set is not {t}-signed; odd-walk witness: {witness}")]
    NotSigned { t: usize, witness: String },
    #[error("point count {count} exceeds enumeration cap {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
