use std::collections::BTreeSet;

use scenelua::assets::NoAssets;
use scenelua::interp::run_source;
use scenelua::lang::ast::*;
use scenelua::lang::parse_source;

#[derive(Default)]
pub struct Coverage(BTreeSet<String>);

impl Coverage {
    fn hit(&mut self, what: impl Into<String>) {
        self.0.insert(what.into());
    }

    fn block(&mut self, b: &Block) {
        for s in &b.stats {
            self.stat(s);
        }
        if let Some(ret) = &b.last_stat {
            self.hit("return");
            ret.exprs.iter().for_each(|e| self.expr(e));
        }
    }

    fn func(&mut self, f: &FuncBody) {
        self.block(&f.body);
    }

    fn stat(&mut self, s: &Stat) {
        match &s.kind {
            StatKind::LocalDecl { exprs, .. } => {
                self.hit("local");
                exprs.iter().for_each(|e| self.expr(e));
            }
            StatKind::LocalFunction { func, .. } => {
                self.hit("local function");
                self.func(func);
            }
            StatKind::Assign { targets, exprs } => {
                self.hit("assignment");
                targets.iter().chain(exprs).for_each(|e| self.expr(e));
            }
            StatKind::Call(e) => {
                self.hit("call");
                self.expr(e);
            }
            StatKind::While { cond, body } => {
                self.hit("while");
                self.expr(cond);
                self.block(body);
            }
            StatKind::If { arms, else_body } => {
                self.hit("if");
                if arms.len() > 1 {
                    self.hit("elseif");
                }
                for (c, b) in arms {
                    self.expr(c);
                    self.block(b);
                }
                if let Some(b) = else_body {
                    self.hit("else");
                    self.block(b);
                }
            }
            StatKind::NumericFor {
                start,
                stop,
                step,
                body,
                ..
            } => {
                self.hit("numeric for");
                if !matches!(step.kind, ExprKind::Literal(Literal::Number(n)) if n == 1.0) {
                    self.hit("for step");
                }
                [start, stop, step].into_iter().for_each(|e| self.expr(e));
                self.block(body);
            }
            StatKind::Repeat { body, cond } => {
                self.hit("repeat");
                self.block(body);
                self.expr(cond);
            }
            StatKind::FunctionDecl { func, .. } => {
                self.hit("function");
                self.func(func);
            }
            StatKind::Break => self.hit("break"),
        }
    }

    fn expr(&mut self, e: &Expr) {
        match &e.kind {
            ExprKind::Literal(_) | ExprKind::Var(_) => {}
            ExprKind::Index { base, key } => {
                self.expr(base);
                self.expr(key);
            }
            ExprKind::Field { base, .. } => self.expr(base),
            ExprKind::Call { callee, args } => {
                self.expr(callee);
                args.iter().for_each(|a| self.expr(a));
            }
            ExprKind::BinOp { op, lhs, rhs } => {
                self.hit(format!("binary {}", op.symbol()));
                self.expr(lhs);
                self.expr(rhs);
            }
            ExprKind::UnOp { op, operand } => {
                self.hit(format!("unary {op:?}"));
                self.expr(operand);
            }
            ExprKind::TableCtor(fields) => {
                self.hit("table constructor");
                for f in fields {
                    match f {
                        TableField::Keyed { key, value } => {
                            self.expr(key);
                            self.expr(value);
                        }
                        TableField::Named { value, .. } | TableField::Positional(value) => self.expr(value),
                    }
                }
            }
            ExprKind::Function(f) => {
                self.hit("function expression");
                self.func(f);
            }
            ExprKind::Paren(inner) => self.expr(inner),
        }
    }
}

/// Constructs every corpus script together must exercise.
pub fn required_constructs() -> Vec<String> {
    let mut required: Vec<String> = [
        "local",
        "local function",
        "assignment",
        "call",
        "while",
        "if",
        "elseif",
        "else",
        "numeric for",
        "for step",
        "repeat",
        "function",
        "function expression",
        "break",
        "return",
        "table constructor",
        "long comment",
        "line comment",
    ]
    .map(String::from)
    .to_vec();
    use BinOp::*;
    for op in [
        Or, And, Eq, NotEq, Less, LessEq, Greater, GreaterEq, BitOr, BitXor, BitAnd, ShiftLeft, ShiftRight, Concat,
        Add, Sub, Mul, Div, Mod, Pow,
    ] {
        required.push(format!("binary {}", op.symbol()));
    }
    for op in [UnOp::Neg, UnOp::Not, UnOp::Len, UnOp::BitNot] {
        required.push(format!("unary {op:?}"));
    }
    required
}

/// Parse and evaluate the grammar and oracle corpora and return the
/// required constructs none of them used.
pub fn missing_constructs() -> Vec<String> {
    let mut coverage = Coverage::default();
    let scripts: Vec<_> = ["grammar", "oracle"]
        .iter()
        .flat_map(|dir| super::corpus_files(dir, "lua"))
        .collect();
    for (path, source) in &scripts {
        let chunk = parse_source(source).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        run_source(source, &NoAssets).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        coverage.block(&chunk.block);
        if source.contains("--[[") {
            coverage.hit("long comment");
        }
        if source.lines().any(|l| l.contains("--") && !l.contains("--[")) {
            coverage.hit("line comment");
        }
    }
    required_constructs()
        .into_iter()
        .filter(|r| !coverage.0.contains(r))
        .collect()
}
