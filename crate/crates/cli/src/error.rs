use std::fmt;

use thiserror::Error;

/// A 1-based source location.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: Pos, message: String },

    #[error("elaboration error at {pos}: {message}")]
    Elaboration { pos: Pos, message: String },

    /// A resource cap was hit; reported as an `unknown-cap` verdict.
    #[error("resource cap: {0}")]
    Cap(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        CliError::Syntax { pos, message: message.into() }
    }

    pub fn elaboration(pos: Pos, message: impl Into<String>) -> Self {
        CliError::Elaboration { pos, message: message.into() }
    }

    /// Process exit code for a failed run.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Inconsistency(_) => 3,
            _ => 1,
        }
    }
}

/// Engine failures: internal inconsistencies and failed pipeline stages map
/// to exit 3, everything else is a usage problem.
impl From<cca_core::Error> for CliError {
    fn from(e: cca_core::Error) -> Self {
        match e {
            cca_core::Error::Inconsistency(_) | cca_core::Error::Stage { .. } => CliError::Inconsistency(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(cca_core::Error::Inconsistency("x".into())).exit_code(), 3);
        let stage = cca_core::Error::Stage { stage: "colour check", reason: "x".into() };
        assert_eq!(CliError::from(stage).exit_code(), 3);
        assert_eq!(CliError::from(cca_core::Error::Disconnected).exit_code(), 1);
        assert_eq!(CliError::syntax(Pos::default(), "x").exit_code(), 1);
    }
}
