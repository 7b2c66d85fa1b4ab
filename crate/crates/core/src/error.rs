use thiserror::Error;

/// Errors raised while building, solving or serializing transformations.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A kernel, transform or file configuration is invalid.
    #[error("configuration error: {0}")]
    Config(String),

    /// Landmark data cannot define an interpolation problem (e.g. duplicate sources).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The interpolation system is singular or rank deficient.
    #[error("solvability error: {0}")]
    Solvability(String),

    /// Malformed text input.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Well-formed input that violates a semantic rule.
    #[error("validation error: {0}")]
    Validation(String),

    /// Every value of a parameter sweep failed.
    #[error("sweep error: {0}")]
    Sweep(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerical pipeline rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Solvability(_) | Error::Sweep(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
