//! Tree-walking evaluator. Scripts run against an `InterpreterSession`
//! whose graphics builtins write a `SceneBuilder`.

mod builtins;
mod env;
mod error;
mod eval;
mod number;
mod session;
mod value;

pub use builtins::Builtin;
pub use error::{RuntimeError, ScriptError};
pub use number::{format_number, str_to_number, to_integer};
pub use session::{
    evaluate, evaluation_count, run_source, EvalOutcome, InterpreterSession, DEFAULT_STEP_LIMIT, MAX_CALL_DEPTH,
};
pub use value::{Table, Value};
