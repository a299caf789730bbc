use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;
use std::sync::Arc;

use super::builtins::Builtin;
use super::env::Scope;
use super::number::format_number;
use crate::lang::ast::FuncBody;

pub type TableRef = Rc<RefCell<Table>>;

#[derive(Clone, Default)]
pub enum Value {
    #[default]
    Nil,
    Boolean(bool),
    Number(f64),
    Str(Rc<str>),
    Table(TableRef),
    Function(Rc<Closure>),
    Builtin(Builtin),
}

pub struct Closure {
    pub func: Arc<FuncBody>,
    pub env: Rc<Scope>,
}

impl Value {
    pub fn str(s: &str) -> Value {
        Value::Str(Rc::from(s))
    }

    pub fn new_table(table: Table) -> Value {
        Value::Table(Rc::new(RefCell::new(table)))
    }

    pub fn is_truthy(&self) -> bool {
        !matches!(self, Value::Nil | Value::Boolean(false))
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Nil => "nil",
            Value::Boolean(_) => "boolean",
            Value::Number(_) => "number",
            Value::Str(_) => "string",
            Value::Table(_) => "table",
            Value::Function(_) | Value::Builtin(_) => "function",
        }
    }

    /// Primitive equality: by value for scalars and strings, by identity
    /// for tables and functions.
    pub fn raw_equals(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Nil, Value::Nil) => true,
            (Value::Boolean(a), Value::Boolean(b)) => a == b,
            (Value::Number(a), Value::Number(b)) => a == b,
            (Value::Str(a), Value::Str(b)) => a == b,
            (Value::Table(a), Value::Table(b)) => Rc::ptr_eq(a, b),
            (Value::Function(a), Value::Function(b)) => Rc::ptr_eq(a, b),
            (Value::Builtin(a), Value::Builtin(b)) => a == b,
            _ => false,
        }
    }
}

/// Text shown by `print`.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nil => f.write_str("nil"),
            Value::Boolean(b) => write!(f, "{b}"),
            Value::Number(n) => f.write_str(&format_number(*n)),
            Value::Str(s) => f.write_str(s),
            Value::Table(_) => f.write_str("table"),
            Value::Function(_) | Value::Builtin(_) => f.write_str("function"),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Str(s) => write!(f, "{s:?}"),
            other => write!(f, "{other}"),
        }
    }
}

/// Hashable form of a non-nil table key. Integral numbers are normalized
/// so that `1` and `1.0` (and `0` and `-0`) address the same slot.
#[derive(Clone)]
pub enum Key {
    Number(u64),
    Str(Rc<str>),
    Boolean(bool),
    Ref(Value),
}

impl Key {
    pub fn from_value(v: &Value) -> Option<Key> {
        Some(match v {
            Value::Nil => return None,
            Value::Number(n) => {
                let n = if *n == 0.0 { 0.0 } else { *n };
                Key::Number(n.to_bits())
            }
            Value::Str(s) => Key::Str(s.clone()),
            Value::Boolean(b) => Key::Boolean(*b),
            other => Key::Ref(other.clone()),
        })
    }

    fn identity(&self) -> usize {
        match self {
            Key::Ref(Value::Table(t)) => Rc::as_ptr(t) as *const u8 as usize,
            Key::Ref(Value::Function(c)) => Rc::as_ptr(c) as *const u8 as usize,
            Key::Ref(Value::Builtin(b)) => *b as usize,
            _ => 0,
        }
    }
}

impl PartialEq for Key {
    fn eq(&self, other: &Key) -> bool {
        match (self, other) {
            (Key::Number(a), Key::Number(b)) => a == b,
            (Key::Str(a), Key::Str(b)) => a == b,
            (Key::Boolean(a), Key::Boolean(b)) => a == b,
            (Key::Ref(a), Key::Ref(b)) => a.raw_equals(b),
            _ => false,
        }
    }
}

impl Eq for Key {}

impl Hash for Key {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            Key::Number(bits) => bits.hash(state),
            Key::Str(s) => s.hash(state),
            Key::Boolean(b) => b.hash(state),
            Key::Ref(_) => self.identity().hash(state),
        }
    }
}

/// Table with a contiguous 1-based array part and a hash part for every
/// other key.
#[derive(Default)]
pub struct Table {
    array: Vec<Value>,
    hash: HashMap<Key, Value>,
}

fn array_slot(v: &Value) -> Option<usize> {
    match v {
        Value::Number(n) if n.fract() == 0.0 && *n >= 1.0 && *n <= usize::MAX as f64 => Some(*n as usize),
        _ => None,
    }
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_array(items: Vec<Value>) -> Self {
        let mut t = Table::new();
        for (i, v) in items.into_iter().enumerate() {
            t.set(Value::Number((i + 1) as f64), v).expect("integer keys are valid");
        }
        t
    }

    /// Length of the array part, which is always a border.
    pub fn len(&self) -> usize {
        self.array.len()
    }

    pub fn is_empty(&self) -> bool {
        self.array.is_empty() && self.hash.is_empty()
    }

    pub fn array(&self) -> &[Value] {
        &self.array
    }

    pub fn get(&self, key: &Value) -> Value {
        if let Some(i) = array_slot(key) {
            if i <= self.array.len() {
                return self.array[i - 1].clone();
            }
        }
        Key::from_value(key)
            .and_then(|k| self.hash.get(&k).cloned())
            .unwrap_or(Value::Nil)
    }

    /// Store `value` under `key`. Fails only for a nil key.
    pub fn set(&mut self, key: Value, value: Value) -> Result<(), &'static str> {
        let slot = array_slot(&key);
        let len = self.array.len();
        match slot {
            Some(i) if i <= len => {
                if matches!(value, Value::Nil) {
                    // Keep the array part contiguous: everything after the
                    // hole moves to the hash part.
                    let tail = self.array.split_off(i);
                    self.array.truncate(i - 1);
                    for (offset, v) in tail.into_iter().enumerate() {
                        let k = Key::Number(((i + 1 + offset) as f64).to_bits());
                        self.hash.insert(k, v);
                    }
                } else {
                    self.array[i - 1] = value;
                }
                Ok(())
            }
            Some(i) if i == len + 1 && !matches!(value, Value::Nil) => {
                self.array.push(value);
                // Pull following integer keys out of the hash part.
                loop {
                    let next = Key::Number(((self.array.len() + 1) as f64).to_bits());
                    match self.hash.remove(&next) {
                        Some(v) => self.array.push(v),
                        None => break,
                    }
                }
                Ok(())
            }
            _ => {
                let k = Key::from_value(&key).ok_or("index is nil")?;
                if matches!(value, Value::Nil) {
                    self.hash.remove(&k);
                } else {
                    self.hash.insert(k, value);
                }
                Ok(())
            }
        }
    }
}
