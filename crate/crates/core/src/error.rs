use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    #[error("invalid spectral shape: {0}")]
    InvalidShape(String),

    #[error("empty spectrum: the shape has no amplitude on any grid bin")]
    EmptySpectrum,

    #[error("spectral amplitude is not normalized (sum |c_k|^2 = {0})")]
    NotNormalized(f64),

    #[error("amplitude count {found} does not match grid with {expected} bins")]
    LengthMismatch { expected: usize, found: usize },

    #[error("frequency grids do not match")]
    GridMismatch,

    #[error("frequency must be positive and finite, got {0}")]
    InvalidFrequency(f64),

    #[error("invalid device response: {0}")]
    InvalidResponse(String),

    #[error("grid incommensurate with carrier: 2*omega_0/omega_s = {ratio} is not an integer")]
    Incommensurate { ratio: f64 },

    #[error("invalid Fock state: {0}")]
    InvalidState(String),

    #[error("oracle capacity exceeded: {bins} bins requested, limit is {limit}")]
    OracleCapacity { bins: usize, limit: usize },

    #[error("number of trials must be at least 1")]
    NoTrials,

    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

/// Coarse classification used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Runtime,
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    /// Wraps `self` with a path-like context such as `sweep step 3`.
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::OracleCapacity { .. } => ErrorClass::Runtime,
            Error::Context { source, .. } => source.class(),
            _ => ErrorClass::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
