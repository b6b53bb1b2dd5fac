use std::fmt;
use std::path::PathBuf;

/// A malformed input file; `line` and `column` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl fmt::Display) -> Self {
        ParseError {
            line,
            column,
            message: message.to_string(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] quasicorners_core::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
