use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("jet shape mismatch: {0}")]
    Shape(String),

    #[error("division by zero: reciprocal of a jet with constant term {0:e}")]
    DivisionByZero(f64),

    #[error("inadmissible state: {0}")]
    Physics(String),

    #[error("physics abort at cell {cell} (t = {time}): {reason}")]
    Abort {
        cell: String,
        time: f64,
        reason: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("index {index} out of range for {what}")]
    Index { index: String, what: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("bisection bracket error: {0}")]
    Bracket(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn physics(msg: impl Into<String>) -> Self {
        Error::Physics(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Whether this error came from the solution itself (as opposed to setup or I/O).
    pub fn is_physics(&self) -> bool {
        matches!(self, Error::Physics(_) | Error::Abort { .. } | Error::DivisionByZero(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
