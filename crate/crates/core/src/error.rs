use thiserror::Error;

/// Errors produced by election construction, perturbation, tallying and parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid election: {0}")]
    InvalidElection(String),

    #[error("invalid operation: {0}")]
    InvalidOperation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown rule id `{0}`")]
    UnknownRule(String),

    #[error("unknown axiom id `{0}`")]
    UnknownAxiom(String),

    #[error("invalid culture spec `{spec}`: {msg}")]
    InvalidCulture { spec: String, msg: String },

    /// Solitary-winner checks are defined for two-alliance elections only.
    #[error("solitary-winner check requires exactly two alliances, got {0}")]
    NotTwoAlliance(usize),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
