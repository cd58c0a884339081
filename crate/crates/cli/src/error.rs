use std::fmt;

use thiserror::Error;
use weyl_core::WeylError;

use crate::lexer::Pos;

/// Unexpected token at `pos`, with the set of tokens that would have been accepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: Pos,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: found {}, expected ", self.pos, self.found)?;
        match self.expected.as_slice() {
            [one] => f.write_str(one),
            many => write!(f, "one of {}", many.join(", ")),
        }
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
    #[error("dimension error at {pos}: {what} has length {got}, expected {expected}")]
    Dimension {
        pos: Pos,
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("error at {pos}: {source}")]
    Eval { pos: Pos, source: WeylError },
    #[error("{0}")]
    Core(#[from] WeylError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    /// 1 for failed checks, 2 for everything the user has to fix in the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Core(
                WeylError::NotAnAutomorphism(_)
                | WeylError::HomomorphismCounterexample(_)
                | WeylError::LatticeNotMapped(_)
                | WeylError::InvariantMismatch(_)
                | WeylError::NotInAut2(_),
            ) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
