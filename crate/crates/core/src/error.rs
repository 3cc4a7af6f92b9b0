use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{line}:{column}: syntax error: expected {expected}, found {found}")]
    Syntax { line: usize, column: usize, expected: String, found: String },

    /// Well-formed input that does not describe a valid object.
    #[error("semantic error: {0}")]
    Semantic(String),

    /// The algebra failed verification; the payload lists the violations.
    #[error("axiom violation:\n{0}")]
    AxiomViolation(String),

    /// A construction produced something its defining statement rules out.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
