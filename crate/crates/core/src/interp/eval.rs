use std::cmp::Ordering;
use std::rc::Rc;

use super::env::Scope;
use super::error::RuntimeError;
use super::number::{format_number, str_to_number, to_integer};
use super::session::{InterpreterSession, MAX_CALL_DEPTH};
use super::value::{Closure, Table, Value};
use crate::lang::ast::*;
use crate::lang::SourceSpan;

const STACK_RED_ZONE: usize = 128 * 1024;
const STACK_SEGMENT: usize = 4 * 1024 * 1024;

pub(crate) enum Flow {
    Normal,
    Break,
    Return(Vec<Value>),
}

enum Target {
    Name(String),
    Slot(Value, Value),
}

fn arith_operand(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => Some(*n),
        Value::Str(s) => str_to_number(s),
        _ => None,
    }
}

fn finite(n: f64, span: SourceSpan) -> Result<Value, RuntimeError> {
    if n.is_finite() {
        Ok(Value::Number(n))
    } else {
        Err(RuntimeError::new("arithmetic result is not finite", span))
    }
}

fn lua_mod(a: f64, b: f64) -> f64 {
    let r = a % b;
    if r != 0.0 && (r < 0.0) != (b < 0.0) {
        r + b
    } else {
        r
    }
}

fn shift_left(x: i64, n: i64) -> i64 {
    if n <= -64 || n >= 64 {
        0
    } else if n >= 0 {
        ((x as u64) << n) as i64
    } else {
        ((x as u64) >> -n) as i64
    }
}

fn scalar_name(v: &Value) -> String {
    format!("a {} value", v.type_name())
}

impl InterpreterSession<'_> {
    fn tick(&mut self, span: SourceSpan) -> Result<(), RuntimeError> {
        self.steps += 1;
        if self.steps > self.step_limit {
            Err(RuntimeError::new("execution budget exceeded", span))
        } else {
            Ok(())
        }
    }

    pub(crate) fn exec_block(&mut self, block: &Block, env: &Rc<Scope>) -> Result<Flow, RuntimeError> {
        self.exec_block_scoped(block, env.clone()).map(|(flow, _)| flow)
    }

    /// Run a block and also hand back its innermost scope, which the
    /// condition of `repeat ... until` can see.
    fn exec_block_scoped(&mut self, block: &Block, mut env: Rc<Scope>) -> Result<(Flow, Rc<Scope>), RuntimeError> {
        for stat in &block.stats {
            match self.exec_stat(stat, &mut env)? {
                Flow::Normal => {}
                flow => return Ok((flow, env)),
            }
        }
        if let Some(ret) = &block.last_stat {
            self.tick(ret.span)?;
            let values = self.eval_multi(&ret.exprs, &env)?;
            return Ok((Flow::Return(values), env));
        }
        Ok((Flow::Normal, env))
    }

    fn exec_stat(&mut self, stat: &Stat, env: &mut Rc<Scope>) -> Result<Flow, RuntimeError> {
        self.tick(stat.span)?;
        match &stat.kind {
            StatKind::LocalDecl { names, exprs } => {
                let mut values = self.eval_multi(exprs, env)?;
                values.resize(names.len(), Value::Nil);
                let vars = names.iter().map(|n| Rc::from(n.text.as_str())).zip(values).collect();
                *env = Scope::child(env, vars);
            }
            StatKind::LocalFunction { name, func } => {
                let scope = Scope::child(env, vec![(Rc::from(name.text.as_str()), Value::Nil)]);
                let closure = self.make_closure(func, &scope);
                scope.assign(&name.text, closure);
                *env = scope;
            }
            StatKind::Assign { targets, exprs } => {
                let mut places = Vec::with_capacity(targets.len());
                for target in targets {
                    places.push(self.eval_target(target, env)?);
                }
                let mut values = self.eval_multi(exprs, env)?;
                values.resize(places.len(), Value::Nil);
                for ((place, value), target) in places.into_iter().zip(values).zip(targets) {
                    self.store(place, value, env, target.span)?;
                }
            }
            StatKind::Call(expr) => {
                self.eval_call(expr, env)?;
            }
            StatKind::While { cond, body } => loop {
                if !self.eval(cond, env)?.is_truthy() {
                    break;
                }
                match self.exec_block(body, env)? {
                    Flow::Normal => {}
                    Flow::Break => break,
                    flow @ Flow::Return(_) => return Ok(flow),
                }
            },
            StatKind::If { arms, else_body } => {
                for (cond, body) in arms {
                    if self.eval(cond, env)?.is_truthy() {
                        return self.exec_block(body, env);
                    }
                }
                if let Some(body) = else_body {
                    return self.exec_block(body, env);
                }
            }
            StatKind::NumericFor {
                name,
                start,
                stop,
                step,
                body,
            } => {
                let bound = |expr: &Expr, what: &str, this: &mut Self| -> Result<f64, RuntimeError> {
                    let v = this.eval(expr, env)?;
                    arith_operand(&v)
                        .ok_or_else(|| RuntimeError::new(format!("'for' {what} value must be a number"), expr.span))
                };
                let start_v = bound(start, "initial", self)?;
                let stop_v = bound(stop, "limit", self)?;
                let step_v = bound(step, "step", self)?;
                if step_v == 0.0 {
                    return Err(RuntimeError::new("'for' step is zero", step.span));
                }
                let var: Rc<str> = Rc::from(name.text.as_str());
                let mut i = start_v;
                while if step_v > 0.0 { i <= stop_v } else { i >= stop_v } {
                    self.tick(stat.span)?;
                    let scope = Scope::child(env, vec![(var.clone(), Value::Number(i))]);
                    match self.exec_block(body, &scope)? {
                        Flow::Normal => {}
                        Flow::Break => break,
                        flow @ Flow::Return(_) => return Ok(flow),
                    }
                    i += step_v;
                    if !i.is_finite() {
                        break;
                    }
                }
            }
            StatKind::Repeat { body, cond } => loop {
                let (flow, inner) = self.exec_block_scoped(body, env.clone())?;
                match flow {
                    Flow::Normal => {}
                    Flow::Break => break,
                    flow @ Flow::Return(_) => return Ok(flow),
                }
                if self.eval(cond, &inner)?.is_truthy() {
                    break;
                }
            },
            StatKind::FunctionDecl { name, func } => {
                let closure = self.make_closure(func, env);
                self.assign_name(&name.text, closure, env);
            }
            StatKind::Break => return Ok(Flow::Break),
        }
        Ok(Flow::Normal)
    }

    fn make_closure(&mut self, func: &std::sync::Arc<FuncBody>, env: &Rc<Scope>) -> Value {
        self.track_closure_scope(env);
        Value::Function(Rc::new(Closure {
            func: func.clone(),
            env: env.clone(),
        }))
    }

    fn assign_name(&mut self, name: &str, value: Value, env: &Rc<Scope>) {
        if !env.assign(name, value.clone()) {
            if matches!(value, Value::Nil) {
                self.globals.remove(name);
            } else {
                self.globals.insert(Rc::from(name), value);
            }
        }
    }

    fn eval_target(&mut self, target: &Expr, env: &Rc<Scope>) -> Result<Target, RuntimeError> {
        match &target.kind {
            ExprKind::Var(name) => Ok(Target::Name(name.clone())),
            ExprKind::Index { base, key } => {
                let base = self.eval(base, env)?;
                let key = self.eval(key, env)?;
                Ok(Target::Slot(base, key))
            }
            ExprKind::Field { base, name } => {
                let base = self.eval(base, env)?;
                Ok(Target::Slot(base, Value::str(&name.text)))
            }
            _ => Err(RuntimeError::new("cannot assign to this expression", target.span)),
        }
    }

    fn store(&mut self, place: Target, value: Value, env: &Rc<Scope>, span: SourceSpan) -> Result<(), RuntimeError> {
        match place {
            Target::Name(name) => {
                self.assign_name(&name, value, env);
                Ok(())
            }
            Target::Slot(Value::Table(t), key) => t
                .borrow_mut()
                .set(key, value)
                .map_err(|_| RuntimeError::new("table index is nil", span)),
            Target::Slot(other, _) => Err(RuntimeError::new(
                format!("attempt to index {}", scalar_name(&other)),
                span,
            )),
        }
    }

    /// Evaluate an expression list; a trailing call contributes all of its
    /// results.
    fn eval_multi(&mut self, exprs: &[Expr], env: &Rc<Scope>) -> Result<Vec<Value>, RuntimeError> {
        let mut values = Vec::with_capacity(exprs.len());
        for (i, expr) in exprs.iter().enumerate() {
            if i + 1 == exprs.len() && expr.is_call() {
                values.extend(self.eval_call(expr, env)?);
            } else {
                values.push(self.eval(expr, env)?);
            }
        }
        Ok(values)
    }

    fn eval_call(&mut self, expr: &Expr, env: &Rc<Scope>) -> Result<Vec<Value>, RuntimeError> {
        self.tick(expr.span)?;
        let ExprKind::Call { callee, args } = &expr.kind else {
            unreachable!("eval_call on a non-call expression");
        };
        let f = self.eval(callee, env)?;
        let args = self.eval_multi(args, env)?;
        self.call_value(&f, args, expr.span)
    }

    /// Invoke any value with already-evaluated arguments.
    pub fn call_value(
        &mut self,
        callee: &Value,
        args: Vec<Value>,
        span: SourceSpan,
    ) -> Result<Vec<Value>, RuntimeError> {
        match callee {
            Value::Function(closure) => {
                if self.depth >= MAX_CALL_DEPTH {
                    return Err(RuntimeError::new("stack overflow", span));
                }
                self.depth += 1;
                let result = stacker::maybe_grow(STACK_RED_ZONE, STACK_SEGMENT, || {
                    let func = &closure.func;
                    let mut args = args.into_iter();
                    let vars = func
                        .params
                        .iter()
                        .map(|p| (Rc::from(p.text.as_str()), args.next().unwrap_or(Value::Nil)))
                        .collect();
                    let scope = Scope::child(&closure.env, vars);
                    self.exec_block(&func.body, &scope)
                });
                self.depth -= 1;
                match result? {
                    Flow::Return(values) => Ok(values),
                    Flow::Normal | Flow::Break => Ok(Vec::new()),
                }
            }
            Value::Builtin(b) => self.call_builtin(*b, &args, span),
            other => Err(RuntimeError::new(
                format!("attempt to call {}", scalar_name(other)),
                span,
            )),
        }
    }

    pub(crate) fn eval(&mut self, expr: &Expr, env: &Rc<Scope>) -> Result<Value, RuntimeError> {
        self.tick(expr.span)?;
        match &expr.kind {
            ExprKind::Literal(lit) => Ok(match lit {
                Literal::Nil => Value::Nil,
                Literal::Boolean(b) => Value::Boolean(*b),
                Literal::Number(n) => Value::Number(*n),
                Literal::Str(s) => Value::str(s),
            }),
            ExprKind::Var(name) => Ok(env
                .lookup(name)
                .or_else(|| self.globals.get(name.as_str()).cloned())
                .unwrap_or(Value::Nil)),
            ExprKind::Index { base, key } => {
                let b = self.eval(base, env)?;
                let k = self.eval(key, env)?;
                index(&b, &k, expr.span)
            }
            ExprKind::Field { base, name } => {
                let b = self.eval(base, env)?;
                index(&b, &Value::str(&name.text), expr.span)
            }
            ExprKind::Call { .. } => Ok(self.eval_call(expr, env)?.into_iter().next().unwrap_or(Value::Nil)),
            ExprKind::BinOp { op, lhs, rhs } => {
                let l = self.eval(lhs, env)?;
                match op {
                    BinOp::And => {
                        if l.is_truthy() {
                            self.eval(rhs, env)
                        } else {
                            Ok(l)
                        }
                    }
                    BinOp::Or => {
                        if l.is_truthy() {
                            Ok(l)
                        } else {
                            self.eval(rhs, env)
                        }
                    }
                    _ => {
                        let r = self.eval(rhs, env)?;
                        binary(*op, &l, &r, expr.span)
                    }
                }
            }
            ExprKind::UnOp { op, operand } => {
                let v = self.eval(operand, env)?;
                unary(*op, &v, expr.span)
            }
            ExprKind::TableCtor(fields) => self.eval_table(fields, env),
            ExprKind::Function(func) => Ok(self.make_closure(func, env)),
            ExprKind::Paren(inner) => self.eval(inner, env),
        }
    }

    fn eval_table(&mut self, fields: &[TableField], env: &Rc<Scope>) -> Result<Value, RuntimeError> {
        let mut table = Table::new();
        let mut next_index = 1.0;
        for (i, field) in fields.iter().enumerate() {
            match field {
                TableField::Positional(expr) => {
                    let values = if i + 1 == fields.len() && expr.is_call() {
                        self.eval_call(expr, env)?
                    } else {
                        vec![self.eval(expr, env)?]
                    };
                    for v in values {
                        table.set(Value::Number(next_index), v).expect("numeric key");
                        next_index += 1.0;
                    }
                }
                TableField::Named { name, value } => {
                    let v = self.eval(value, env)?;
                    table.set(Value::str(&name.text), v).expect("string key");
                }
                TableField::Keyed { key, value } => {
                    let k = self.eval(key, env)?;
                    let v = self.eval(value, env)?;
                    table
                        .set(k, v)
                        .map_err(|_| RuntimeError::new("table index is nil", key.span))?;
                }
            }
        }
        Ok(self.new_table(table))
    }
}

fn index(base: &Value, key: &Value, span: SourceSpan) -> Result<Value, RuntimeError> {
    match base {
        Value::Table(t) => Ok(t.borrow().get(key)),
        other => Err(RuntimeError::new(
            format!("attempt to index {}", scalar_name(other)),
            span,
        )),
    }
}

fn arith(op: BinOp, l: &Value, r: &Value, span: SourceSpan) -> Result<Value, RuntimeError> {
    let (Some(a), Some(b)) = (arith_operand(l), arith_operand(r)) else {
        let bad = if arith_operand(l).is_none() { l } else { r };
        return Err(RuntimeError::new(
            format!("attempt to perform arithmetic on {}", scalar_name(bad)),
            span,
        ));
    };
    let n = match op {
        BinOp::Add => a + b,
        BinOp::Sub => a - b,
        BinOp::Mul => a * b,
        BinOp::Div => {
            if b == 0.0 {
                return Err(RuntimeError::new("attempt to divide by zero", span));
            }
            a / b
        }
        BinOp::Mod => {
            if b == 0.0 {
                return Err(RuntimeError::new("attempt to perform 'n%0'", span));
            }
            lua_mod(a, b)
        }
        BinOp::Pow => a.powf(b),
        _ => unreachable!("not an arithmetic operator"),
    };
    finite(n, span)
}

fn bit_operand(v: &Value, span: SourceSpan) -> Result<i64, RuntimeError> {
    match arith_operand(v) {
        Some(n) => to_integer(n).ok_or_else(|| RuntimeError::new("number has no integer representation", span)),
        None => Err(RuntimeError::new(
            format!("attempt to perform bitwise operation on {}", scalar_name(v)),
            span,
        )),
    }
}

fn bitwise(op: BinOp, l: &Value, r: &Value, span: SourceSpan) -> Result<Value, RuntimeError> {
    let a = bit_operand(l, span)?;
    let b = bit_operand(r, span)?;
    let n = match op {
        BinOp::BitAnd => a & b,
        BinOp::BitOr => a | b,
        BinOp::BitXor => a ^ b,
        BinOp::ShiftLeft => shift_left(a, b),
        BinOp::ShiftRight => shift_left(a, b.wrapping_neg()),
        _ => unreachable!("not a bitwise operator"),
    };
    Ok(Value::Number(n as f64))
}

fn compare(l: &Value, r: &Value, span: SourceSpan) -> Result<Ordering, RuntimeError> {
    let ord = match (l, r) {
        (Value::Number(a), Value::Number(b)) => a.partial_cmp(b),
        (Value::Str(a), Value::Str(b)) => Some(a.as_bytes().cmp(b.as_bytes())),
        _ => {
            let (lt, rt) = (l.type_name(), r.type_name());
            let message = if lt == rt {
                format!("attempt to compare two {lt} values")
            } else {
                format!("attempt to compare {lt} with {rt}")
            };
            return Err(RuntimeError::new(message, span));
        }
    };
    Ok(ord.expect("numbers are never NaN"))
}

fn concat_piece(v: &Value) -> Option<String> {
    match v {
        Value::Str(s) => Some(s.to_string()),
        Value::Number(n) => Some(format_number(*n)),
        _ => None,
    }
}

fn binary(op: BinOp, l: &Value, r: &Value, span: SourceSpan) -> Result<Value, RuntimeError> {
    match op {
        BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div | BinOp::Mod | BinOp::Pow => arith(op, l, r, span),
        BinOp::BitAnd | BinOp::BitOr | BinOp::BitXor | BinOp::ShiftLeft | BinOp::ShiftRight => bitwise(op, l, r, span),
        BinOp::Eq => Ok(Value::Boolean(l.raw_equals(r))),
        BinOp::NotEq => Ok(Value::Boolean(!l.raw_equals(r))),
        BinOp::Less => Ok(Value::Boolean(compare(l, r, span)? == Ordering::Less)),
        BinOp::LessEq => Ok(Value::Boolean(compare(l, r, span)? != Ordering::Greater)),
        BinOp::Greater => Ok(Value::Boolean(compare(l, r, span)? == Ordering::Greater)),
        BinOp::GreaterEq => Ok(Value::Boolean(compare(l, r, span)? != Ordering::Less)),
        BinOp::Concat => match (concat_piece(l), concat_piece(r)) {
            (Some(a), Some(b)) => Ok(Value::Str(Rc::from(a + &b))),
            (None, _) => Err(RuntimeError::new(
                format!("attempt to concatenate {}", scalar_name(l)),
                span,
            )),
            (_, None) => Err(RuntimeError::new(
                format!("attempt to concatenate {}", scalar_name(r)),
                span,
            )),
        },
        BinOp::And | BinOp::Or => unreachable!("short-circuit operators are evaluated lazily"),
    }
}

fn unary(op: UnOp, v: &Value, span: SourceSpan) -> Result<Value, RuntimeError> {
    match op {
        UnOp::Not => Ok(Value::Boolean(!v.is_truthy())),
        UnOp::Neg => match arith_operand(v) {
            Some(n) => finite(-n, span),
            None => Err(RuntimeError::new(
                format!("attempt to perform arithmetic on {}", scalar_name(v)),
                span,
            )),
        },
        UnOp::Len => match v {
            Value::Str(s) => Ok(Value::Number(s.len() as f64)),
            Value::Table(t) => Ok(Value::Number(t.borrow().len() as f64)),
            other => Err(RuntimeError::new(
                format!("attempt to get length of {}", scalar_name(other)),
                span,
            )),
        },
        UnOp::BitNot => Ok(Value::Number(!bit_operand(v, span)? as f64)),
    }
}
