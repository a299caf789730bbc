use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::rc::{Rc, Weak};
use std::sync::Arc;

use super::builtins::Builtin;
use super::env::Scope;
use super::error::{RuntimeError, ScriptError};
use super::value::{Table, Value};
use crate::assets::AssetResolver;
use crate::geometry::Mesh;
use crate::lang::ast::Chunk;
use crate::lang::parse_source;
use crate::scene::{Scene, SceneBuilder};

pub const DEFAULT_STEP_LIMIT: u64 = 50_000_000;
pub const MAX_CALL_DEPTH: usize = 10_000;

thread_local! {
    static EVALUATIONS: Cell<u64> = const { Cell::new(0) };
}

/// Number of evaluations started on this thread. Lets callers prove that
/// a code path does no interpretation work.
pub fn evaluation_count() -> u64 {
    EVALUATIONS.with(Cell::get)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalOutcome {
    pub scene: Scene,
    pub console: Vec<String>,
}

/// State for evaluating one chunk.
pub struct InterpreterSession<'a> {
    pub(crate) globals: HashMap<Rc<str>, Value>,
    pub(crate) console: Vec<String>,
    pub(crate) assets: &'a dyn AssetResolver,
    pub(crate) builder: SceneBuilder,
    pub(crate) meshes: HashMap<String, Arc<Mesh>>,
    pub(crate) step_limit: u64,
    pub(crate) steps: u64,
    pub(crate) depth: usize,
    captured: Vec<Weak<Scope>>,
    tables: Vec<Weak<RefCell<Table>>>,
    tables_alive_hint: usize,
}

impl<'a> InterpreterSession<'a> {
    pub fn new(assets: &'a dyn AssetResolver) -> Self {
        let globals = Builtin::ALL
            .into_iter()
            .map(|b| (Rc::from(b.name()), Value::Builtin(b)))
            .collect();
        Self {
            globals,
            console: Vec::new(),
            assets,
            builder: SceneBuilder::new(),
            meshes: HashMap::new(),
            step_limit: DEFAULT_STEP_LIMIT,
            steps: 0,
            depth: 0,
            captured: Vec::new(),
            tables: Vec::new(),
            tables_alive_hint: 0,
        }
    }

    pub fn with_step_limit(mut self, limit: u64) -> Self {
        self.step_limit = limit;
        self
    }

    pub fn console(&self) -> &[String] {
        &self.console
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Run the chunk, then freeze the scene. On error the console collected
    /// so far is returned alongside it.
    pub fn evaluate(mut self, chunk: &Chunk) -> Result<EvalOutcome, (RuntimeError, Vec<String>)> {
        EVALUATIONS.with(|c| c.set(c.get() + 1));
        let root = Scope::root();
        if let Err(e) = self.exec_block(&chunk.block, &root) {
            return Err((e, std::mem::take(&mut self.console)));
        }
        match self.builder.freeze() {
            Ok(scene) => Ok(EvalOutcome {
                scene,
                console: std::mem::take(&mut self.console),
            }),
            Err(e) => Err((
                RuntimeError::new(e.to_string(), chunk.span),
                std::mem::take(&mut self.console),
            )),
        }
    }

    pub(crate) fn track_closure_scope(&mut self, scope: &Rc<Scope>) {
        self.captured.push(Rc::downgrade(scope));
    }

    pub(crate) fn new_table(&mut self, table: Table) -> Value {
        let rc = Rc::new(RefCell::new(table));
        self.tables.push(Rc::downgrade(&rc));
        if self.tables.len() > 2 * self.tables_alive_hint + 1024 {
            self.tables.retain(|w| w.strong_count() > 0);
            self.tables_alive_hint = self.tables.len();
        }
        Value::Table(rc)
    }
}

impl Drop for InterpreterSession<'_> {
    // Closures and tables can form reference cycles. Nothing but the frozen
    // scene and the console outlives the session, so empty every scope a
    // closure captured and every table still alive.
    fn drop(&mut self) {
        self.globals.clear();
        for weak in self.captured.drain(..) {
            if let Some(scope) = weak.upgrade() {
                scope.clear_chain();
            }
        }
        for weak in self.tables.drain(..) {
            if let Some(table) = weak.upgrade() {
                let taken = std::mem::take(&mut *table.borrow_mut());
                drop(taken);
            }
        }
    }
}

/// Evaluate a parsed chunk with a fresh session.
pub fn evaluate(chunk: &Chunk, assets: &dyn AssetResolver) -> Result<EvalOutcome, ScriptError> {
    InterpreterSession::new(assets)
        .evaluate(chunk)
        .map_err(|(error, console)| ScriptError::Runtime { error, console })
}

/// Parse and evaluate source text.
pub fn run_source(source: &str, assets: &dyn AssetResolver) -> Result<EvalOutcome, ScriptError> {
    let chunk = parse_source(source)?;
    evaluate(&chunk, assets)
}
