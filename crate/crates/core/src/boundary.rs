//! Request/response entry points for an embedding front end: one call to
//! interpret a script, one to export it. Nothing is retained between calls.

use std::fmt::Write as _;

use crate::assets::AssetResolver;
use crate::codegen::{generate_template, package_archive, serialize_scene};
use crate::interp::{run_source, EvalOutcome, ScriptError};

/// Outcome of interpreting a script, in the shape a front end renders.
#[derive(Debug, Clone, PartialEq)]
pub enum InterpretResult {
    /// Canonical scene document text.
    Ok {
        document: String,
        console: Vec<String>,
    },
    SyntaxError {
        line: u32,
        message: String,
    },
    RuntimeError {
        line: u32,
        message: String,
        console: Vec<String>,
    },
}

impl InterpretResult {
    fn from_run(result: Result<EvalOutcome, ScriptError>) -> Self {
        match result {
            Ok(outcome) => InterpretResult::Ok {
                document: serialize_scene(&outcome.scene),
                console: outcome.console,
            },
            Err(ScriptError::Syntax(e)) => InterpretResult::SyntaxError {
                line: e.line(),
                message: e.message,
            },
            Err(ScriptError::Runtime { error, console }) => InterpretResult::RuntimeError {
                line: error.line(),
                message: error.message,
                console,
            },
        }
    }

    pub fn console(&self) -> &[String] {
        match self {
            InterpretResult::Ok { console, .. } | InterpretResult::RuntimeError { console, .. } => console,
            InterpretResult::SyntaxError { .. } => &[],
        }
    }

    /// JSON with exactly one of `ok`, `syntax_error` or `runtime_error`,
    /// plus `console`. The scene document is embedded verbatim.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n\"");
        match self {
            InterpretResult::Ok { document, .. } => {
                out.push_str("ok\": ");
                out.push_str(document);
            }
            InterpretResult::SyntaxError { line, message } => {
                let _ = write!(out, "syntax_error\": {}", error_json(*line, message));
            }
            InterpretResult::RuntimeError { line, message, .. } => {
                let _ = write!(out, "runtime_error\": {}", error_json(*line, message));
            }
        }
        let console = serde_json::to_string(self.console()).expect("strings serialize");
        let _ = write!(out, ",\n\"console\": {console}\n}}");
        out
    }
}

fn error_json(line: u32, message: &str) -> String {
    serde_json::json!({ "line": line, "message": message }).to_string()
}

pub fn interpret(source: &str, assets: &dyn AssetResolver) -> InterpretResult {
    InterpretResult::from_run(run_source(source, assets))
}

/// `interpret` as a JSON result document.
pub fn interpret_document(source: &str, assets: &dyn AssetResolver) -> String {
    interpret(source, assets).to_json()
}

/// Zip archive of the exported web package for a script.
pub fn export_archive(source: &str, assets: &dyn AssetResolver) -> Result<Vec<u8>, ScriptError> {
    let outcome = run_source(source, assets)?;
    Ok(package_archive(&generate_template(&outcome.scene)))
}
