use std::sync::Arc;

use super::span::SourceSpan;

/// Root of a parsed program.
#[derive(Debug, Clone, PartialEq)]
pub struct Chunk {
    pub block: Block,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub stats: Vec<Stat>,
    pub last_stat: Option<Return>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Return {
    pub exprs: Vec<Expr>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Name {
    pub text: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stat {
    pub kind: StatKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum StatKind {
    LocalDecl {
        names: Vec<Name>,
        exprs: Vec<Expr>,
    },
    LocalFunction {
        name: Name,
        func: Arc<FuncBody>,
    },
    /// Targets are always `Var`, `Index` or `Field` expressions.
    Assign {
        targets: Vec<Expr>,
        exprs: Vec<Expr>,
    },
    /// The expression is always an `ExprKind::Call`.
    Call(Expr),
    While {
        cond: Expr,
        body: Block,
    },
    If {
        arms: Vec<(Expr, Block)>,
        else_body: Option<Block>,
    },
    NumericFor {
        name: Name,
        start: Expr,
        stop: Expr,
        /// The literal `1` when the source omits the step.
        step: Expr,
        body: Block,
    },
    Repeat {
        body: Block,
        cond: Expr,
    },
    FunctionDecl {
        name: Name,
        func: Arc<FuncBody>,
    },
    Break,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuncBody {
    pub params: Vec<Name>,
    pub body: Block,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Literal(Literal),
    Var(String),
    Index {
        base: Box<Expr>,
        key: Box<Expr>,
    },
    Field {
        base: Box<Expr>,
        name: Name,
    },
    Call {
        callee: Box<Expr>,
        args: Vec<Expr>,
    },
    BinOp {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    UnOp {
        op: UnOp,
        operand: Box<Expr>,
    },
    TableCtor(Vec<TableField>),
    Function(Arc<FuncBody>),
    /// Parenthesized expression; truncates multiple results to one.
    Paren(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Nil,
    Boolean(bool),
    Number(f64),
    Str(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum TableField {
    Keyed { key: Expr, value: Expr },
    Named { name: Name, value: Expr },
    Positional(Expr),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Or,
    And,
    Eq,
    NotEq,
    Less,
    LessEq,
    Greater,
    GreaterEq,
    BitOr,
    BitXor,
    BitAnd,
    ShiftLeft,
    ShiftRight,
    Concat,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnOp {
    Neg,
    Not,
    Len,
    BitNot,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        use BinOp::*;
        match self {
            Or => "or",
            And => "and",
            Eq => "==",
            NotEq => "~=",
            Less => "<",
            LessEq => "<=",
            Greater => ">",
            GreaterEq => ">=",
            BitOr => "|",
            BitXor => "~",
            BitAnd => "&",
            ShiftLeft => "<<",
            ShiftRight => ">>",
            Concat => "..",
            Add => "+",
            Sub => "-",
            Mul => "*",
            Div => "/",
            Mod => "%",
            Pow => "^",
        }
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: SourceSpan) -> Self {
        Self { kind, span }
    }

    pub fn is_call(&self) -> bool {
        matches!(self.kind, ExprKind::Call { .. })
    }
}
