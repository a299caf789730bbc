use std::fmt;

use crate::lang::{ParseError, SourceSpan};

/// Error raised while evaluating; the span points at the failing
/// expression or statement.
#[derive(Debug, Clone, PartialEq)]
pub struct RuntimeError {
    pub message: String,
    pub span: SourceSpan,
}

impl RuntimeError {
    pub fn new(message: impl Into<String>, span: SourceSpan) -> Self {
        Self {
            message: message.into(),
            span,
        }
    }

    pub fn line(&self) -> u32 {
        self.span.line
    }
}

impl fmt::Display for RuntimeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.span.line, self.message)
    }
}

impl std::error::Error for RuntimeError {}

/// Failure of the whole parse-then-evaluate pipeline. Console output
/// produced before a runtime error is kept.
#[derive(Debug, Clone, PartialEq)]
pub enum ScriptError {
    Syntax(ParseError),
    Runtime { error: RuntimeError, console: Vec<String> },
}

impl ScriptError {
    pub fn line(&self) -> u32 {
        match self {
            ScriptError::Syntax(e) => e.line(),
            ScriptError::Runtime { error, .. } => error.line(),
        }
    }

    pub fn message(&self) -> &str {
        match self {
            ScriptError::Syntax(e) => &e.message,
            ScriptError::Runtime { error, .. } => &error.message,
        }
    }

    pub fn console(&self) -> &[String] {
        match self {
            ScriptError::Syntax(_) => &[],
            ScriptError::Runtime { console, .. } => console,
        }
    }
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptError::Syntax(e) => e.fmt(f),
            ScriptError::Runtime { error, .. } => error.fmt(f),
        }
    }
}

impl std::error::Error for ScriptError {}

impl From<ParseError> for ScriptError {
    fn from(e: ParseError) -> Self {
        ScriptError::Syntax(e)
    }
}
