use std::cell::RefCell;
use std::rc::Rc;

use super::value::Value;

/// One lexical scope. Every `local` statement opens a new child scope, so a
/// closure created before a later `local` never sees that binding.
#[derive(Default)]
pub struct Scope {
    vars: RefCell<Vec<(Rc<str>, Value)>>,
    parent: Option<Rc<Scope>>,
}

impl Scope {
    pub fn root() -> Rc<Scope> {
        Rc::new(Scope::default())
    }

    pub fn child(parent: &Rc<Scope>, vars: Vec<(Rc<str>, Value)>) -> Rc<Scope> {
        Rc::new(Scope {
            vars: RefCell::new(vars),
            parent: Some(parent.clone()),
        })
    }

    /// Innermost binding of `name`, if any.
    pub fn lookup(&self, name: &str) -> Option<Value> {
        let mut scope = self;
        loop {
            if let Some((_, v)) = scope.vars.borrow().iter().rev().find(|(n, _)| &**n == name) {
                return Some(v.clone());
            }
            scope = scope.parent.as_deref()?;
        }
    }

    /// Update the innermost binding of `name`. Returns false when no scope
    /// binds it, in which case the caller writes the global.
    pub fn assign(&self, name: &str, value: Value) -> bool {
        let mut scope = self;
        loop {
            {
                let mut vars = scope.vars.borrow_mut();
                if let Some(slot) = vars.iter_mut().rev().find(|(n, _)| &**n == name) {
                    slot.1 = value;
                    return true;
                }
            }
            match scope.parent.as_deref() {
                Some(p) => scope = p,
                None => return false,
            }
        }
    }

    /// Drop every binding in this scope and its ancestors. Used to break
    /// reference cycles between closures and the scopes they capture.
    pub fn clear_chain(&self) {
        let mut scope = Some(self);
        while let Some(s) = scope {
            let taken = std::mem::take(&mut *s.vars.borrow_mut());
            drop(taken);
            scope = s.parent.as_deref();
        }
    }
}

impl Drop for Scope {
    // Long chains would otherwise be dropped recursively.
    fn drop(&mut self) {
        let mut next = self.parent.take();
        while let Some(rc) = next {
            match Rc::try_unwrap(rc) {
                Ok(mut scope) => next = scope.parent.take(),
                Err(_) => break,
            }
        }
    }
}
