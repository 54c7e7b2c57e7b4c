use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("element is not hyperbolic (|trace| = {trace})")]
    NotHyperbolic { trace: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate surface: {0}")]
    DegenerateSurface(String),

    #[error("inconsistent curve and chain data: {0}")]
    InconsistentData(String),

    #[error("no twist reaches target length {target} (minimum over the period is {minimum})")]
    NoSolution { target: f64, minimum: f64 },

    #[error("enumeration uncertified at word length {max_word_length} for cutoff {cutoff}")]
    BudgetExhausted { max_word_length: usize, cutoff: f64 },

    #[error("spectrum certified only to {available}, but {requested} was requested")]
    IncomparableCutoffs { available: f64, requested: f64 },

    #[error("spectrum is not certified")]
    Uncertified,

    #[error("no value of the spectrum remains below the certified cutoff {cutoff}")]
    CutoffExceeded { cutoff: f64 },

    #[error("candidate spectra are indistinguishable up to {cutoff}")]
    Indistinguishable { cutoff: f64 },

    #[error("every candidate was eliminated")]
    NoCandidateMatches,

    #[error("invalid bound context: {0}")]
    InvalidContext(String),

    #[error("malformed word: {0}")]
    Word(String),

    #[error("i/o: {0}")]
    Io(String),

    #[error("format: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
