use thiserror::Error;

/// A text-format error, located by 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// An object handed to a conversion did not satisfy its invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid {kind}: {}", violations.join("; "))]
pub struct InvalidInput {
    pub kind: &'static str,
    pub violations: Vec<String>,
}

impl InvalidInput {
    pub(crate) fn check(kind: &'static str, violations: Vec<String>) -> Result<(), Self> {
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Self { kind, violations })
        }
    }
}
