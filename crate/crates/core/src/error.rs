use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A Jacobi-type parameter left its admissible range (must exceed -1).
    #[error("parameter {name} = {value} is outside its domain (must be > -1)")]
    ParameterDomain { name: &'static str, value: f64 },

    /// A basis or harmonic index is out of range.
    #[error("invalid index: {0}")]
    Index(String),

    /// The requested dimension is not supported by the operation.
    #[error("unsupported dimension d = {0}")]
    Dimension(usize),

    /// A function input lacks a capability the operation needs.
    #[error("function input lacks the {0} capability")]
    Capability(&'static str),

    /// A function returned a non-finite value at a quadrature node.
    #[error("non-finite value {value} at point {point:?}")]
    NonFinite { point: Vec<f64>, value: f64 },

    /// Problem or run configuration is inconsistent.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_param(name: &'static str, value: f64) -> Result<()> {
    if value > -1.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterDomain { name, value })
    }
}
