use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("internal memory budget exceeded: {in_use} + {requested} > {limit} words")]
    MemoryBudgetExceeded {
        in_use: usize,
        requested: usize,
        limit: usize,
    },

    #[error("pattern unsupported: {0}")]
    PatternUnsupported(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("oracle refused: {0}")]
    OracleGuard(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl EmError {
    /// Errors caused by bad user input, as opposed to algorithm bugs.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            EmError::Config(_)
                | EmError::PatternUnsupported(_)
                | EmError::Parse { .. }
                | EmError::OracleGuard(_)
                | EmError::Io(_)
        )
    }
}

impl From<std::io::Error> for EmError {
    fn from(e: std::io::Error) -> Self {
        EmError::Io(e.to_string())
    }
}

pub type Result<T, E = EmError> = std::result::Result<T, E>;
