use std::cell::Cell;
use std::sync::Arc;

use super::ast::*;
use super::error::ParseError;
use super::lexer::{decode_string, parse_number, tokenize};
use super::span::SourceSpan;
use super::token::{Token, TokenKind};

/// Maximum nesting of statements and expressions before the parser gives up.
pub const MAX_SYNTAX_DEPTH: usize = 200;

thread_local! {
    static PARSES: Cell<u64> = const { Cell::new(0) };
}

/// Number of source texts parsed on this thread.
pub fn parse_count() -> u64 {
    PARSES.with(Cell::get)
}

/// Tokenize and parse a complete source text.
pub fn parse_source(source: &str) -> Result<Chunk, ParseError> {
    PARSES.with(|c| c.set(c.get() + 1));
    let tokens = tokenize(source)?;
    let eof = eof_span_for_source(source);
    Parser::new(&tokens, eof).parse_chunk()
}

/// Parse a token stream produced by [`tokenize`]. End-of-input is placed
/// right after the last token.
pub fn parse(tokens: &[Token]) -> Result<Chunk, ParseError> {
    let eof = match tokens.last() {
        Some(last) => SourceSpan::new(
            last.span.line,
            last.span.column + last.lexeme.chars().count() as u32,
            last.span.end(),
            0,
        ),
        None => SourceSpan::new(1, 1, 0, 0),
    };
    Parser::new(tokens, eof).parse_chunk()
}

fn eof_span_for_source(source: &str) -> SourceSpan {
    let line = 1 + source.bytes().filter(|&b| b == b'\n').count() as u32;
    let last_line = source.rsplit('\n').next().unwrap_or("");
    SourceSpan::new(line, last_line.chars().count() as u32 + 1, source.len(), 0)
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    eof: SourceSpan,
    loop_depth: usize,
    depth: usize,
}

impl<'t> Parser<'t> {
    fn new(tokens: &'t [Token], eof: SourceSpan) -> Self {
        Self {
            tokens,
            pos: 0,
            eof,
            loop_depth: 0,
            depth: 0,
        }
    }

    // ----- token helpers -------------------------------------------------

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn peek_kind_at(&self, ahead: usize) -> Option<TokenKind> {
        self.tokens.get(self.pos + ahead).map(|t| t.kind)
    }

    fn check(&self, kind: TokenKind) -> bool {
        self.peek_kind() == Some(kind)
    }

    fn current_span(&self) -> SourceSpan {
        self.peek().map_or(self.eof, |t| t.span)
    }

    fn previous_span(&self) -> SourceSpan {
        self.pos
            .checked_sub(1)
            .and_then(|i| self.tokens.get(i))
            .map_or(self.eof, |t| t.span)
    }

    fn advance(&mut self) -> &'t Token {
        let token = &self.tokens[self.pos];
        self.pos += 1;
        token
    }

    fn accept(&mut self, kind: TokenKind) -> Option<&'t Token> {
        if self.check(kind) {
            Some(self.advance())
        } else {
            None
        }
    }

    fn near(&self) -> String {
        match self.peek() {
            Some(t) => format!("'{}'", t.lexeme),
            None => "<eof>".to_string(),
        }
    }

    fn error_here(&self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError::new(message, self.current_span()).with_expected(expected.iter().map(|s| s.to_string()).collect())
    }

    fn expect(&mut self, kind: TokenKind) -> Result<&'t Token, ParseError> {
        match self.accept(kind) {
            Some(token) => Ok(token),
            None => Err(self.error_here(
                format!("{} expected near {}", kind.describe(), self.near()),
                &[kind.describe()],
            )),
        }
    }

    /// Expect the token closing a construct opened at `open_line`.
    fn expect_closing(&mut self, kind: TokenKind, opener: TokenKind, open_line: u32) -> Result<&'t Token, ParseError> {
        if let Some(token) = self.accept(kind) {
            return Ok(token);
        }
        let current_line = self.current_span().line;
        let message = if current_line == open_line {
            format!("{} expected near {}", kind.describe(), self.near())
        } else {
            format!(
                "{} expected (to close {} at line {}) near {}",
                kind.describe(),
                opener.describe(),
                open_line,
                self.near()
            )
        };
        Err(self.error_here(message, &[kind.describe()]))
    }

    fn expect_name(&mut self) -> Result<Name, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Name => {
                self.pos += 1;
                Ok(Name {
                    text: t.lexeme.clone(),
                    span: t.span,
                })
            }
            _ => Err(self.error_here(format!("<name> expected near {}", self.near()), &["<name>"])),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_SYNTAX_DEPTH {
            return Err(self.error_here("chunk has too many syntax levels", &[]));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    // ----- blocks and statements ----------------------------------------

    fn parse_chunk(mut self) -> Result<Chunk, ParseError> {
        let block = self.block()?;
        if let Some(t) = self.peek() {
            return Err(ParseError::new(format!("'<eof>' expected near '{}'", t.lexeme), t.span)
                .with_expected(vec!["<eof>".to_string()]));
        }
        let span = SourceSpan::new(1, 1, 0, self.eof.end());
        Ok(Chunk { block, span })
    }

    fn block_follows(&self) -> bool {
        matches!(
            self.peek_kind(),
            None | Some(TokenKind::End | TokenKind::Else | TokenKind::Elseif | TokenKind::Until)
        )
    }

    fn block(&mut self) -> Result<Block, ParseError> {
        let start = self.current_span().empty_at_start();
        let mut stats = Vec::new();
        let mut last_stat = None;
        while !self.block_follows() {
            if self.check(TokenKind::Return) {
                last_stat = Some(self.return_stat()?);
                break;
            }
            if let Some(stat) = self.statement()? {
                stats.push(stat);
            }
        }
        let first = stats
            .first()
            .map(|s: &Stat| s.span)
            .or(last_stat.as_ref().map(|r| r.span));
        let span = match first {
            Some(first) => {
                let last = last_stat
                    .as_ref()
                    .map(|r| r.span)
                    .or(stats.last().map(|s| s.span))
                    .unwrap_or(first);
                first.cover(&last)
            }
            None => start,
        };
        Ok(Block { stats, last_stat, span })
    }

    fn return_stat(&mut self) -> Result<Return, ParseError> {
        let start = self.advance().span;
        let exprs = if self.block_follows() || self.check(TokenKind::Semicolon) {
            Vec::new()
        } else {
            self.expr_list()?
        };
        self.accept(TokenKind::Semicolon);
        Ok(Return {
            exprs,
            span: start.cover(&self.previous_span()),
        })
    }

    fn statement(&mut self) -> Result<Option<Stat>, ParseError> {
        self.enter()?;
        let result = self.statement_inner();
        self.leave();
        result
    }

    fn statement_inner(&mut self) -> Result<Option<Stat>, ParseError> {
        let start = self.current_span();
        let kind = match self.peek_kind() {
            Some(TokenKind::Semicolon) => {
                self.advance();
                return Ok(None);
            }
            Some(TokenKind::If) => self.if_stat()?,
            Some(TokenKind::While) => self.while_stat()?,
            Some(TokenKind::For) => self.for_stat()?,
            Some(TokenKind::Repeat) => self.repeat_stat()?,
            Some(TokenKind::Function) => {
                self.advance();
                let name = self.expect_name()?;
                let func = self.func_body(start.line)?;
                StatKind::FunctionDecl {
                    name,
                    func: Arc::new(func),
                }
            }
            Some(TokenKind::Local) => {
                self.advance();
                if self.accept(TokenKind::Function).is_some() {
                    let name = self.expect_name()?;
                    let func = self.func_body(start.line)?;
                    StatKind::LocalFunction {
                        name,
                        func: Arc::new(func),
                    }
                } else {
                    self.local_decl()?
                }
            }
            Some(TokenKind::Break) => {
                self.advance();
                if self.loop_depth == 0 {
                    return Err(ParseError::new("break outside a loop", start));
                }
                StatKind::Break
            }
            _ => self.expr_stat()?,
        };
        Ok(Some(Stat {
            kind,
            span: start.cover(&self.previous_span()),
        }))
    }

    fn if_stat(&mut self) -> Result<StatKind, ParseError> {
        let open_line = self.advance().span.line;
        let mut arms = Vec::new();
        let cond = self.expr()?;
        self.expect(TokenKind::Then)?;
        arms.push((cond, self.block()?));
        let mut else_body = None;
        loop {
            if self.accept(TokenKind::Elseif).is_some() {
                let cond = self.expr()?;
                self.expect(TokenKind::Then)?;
                arms.push((cond, self.block()?));
            } else if self.accept(TokenKind::Else).is_some() {
                else_body = Some(self.block()?);
                self.expect_closing(TokenKind::End, TokenKind::If, open_line)?;
                break;
            } else {
                self.expect_closing(TokenKind::End, TokenKind::If, open_line)?;
                break;
            }
        }
        Ok(StatKind::If { arms, else_body })
    }

    fn loop_body(&mut self) -> Result<Block, ParseError> {
        self.loop_depth += 1;
        let body = self.block();
        self.loop_depth -= 1;
        body
    }

    fn while_stat(&mut self) -> Result<StatKind, ParseError> {
        let open_line = self.advance().span.line;
        let cond = self.expr()?;
        self.expect(TokenKind::Do)?;
        let body = self.loop_body()?;
        self.expect_closing(TokenKind::End, TokenKind::While, open_line)?;
        Ok(StatKind::While { cond, body })
    }

    fn for_stat(&mut self) -> Result<StatKind, ParseError> {
        let open_line = self.advance().span.line;
        let name = self.expect_name()?;
        self.expect(TokenKind::Assign)?;
        let start = self.expr()?;
        self.expect(TokenKind::Comma)?;
        let stop = self.expr()?;
        let step = if self.accept(TokenKind::Comma).is_some() {
            self.expr()?
        } else {
            let at = SourceSpan::new(stop.span.line, stop.span.column, stop.span.end(), 0);
            Expr::new(ExprKind::Literal(Literal::Number(1.0)), at)
        };
        self.expect(TokenKind::Do)?;
        let body = self.loop_body()?;
        self.expect_closing(TokenKind::End, TokenKind::For, open_line)?;
        Ok(StatKind::NumericFor {
            name,
            start,
            stop,
            step,
            body,
        })
    }

    fn repeat_stat(&mut self) -> Result<StatKind, ParseError> {
        let open_line = self.advance().span.line;
        let body = self.loop_body()?;
        self.expect_closing(TokenKind::Until, TokenKind::Repeat, open_line)?;
        let cond = self.expr()?;
        Ok(StatKind::Repeat { body, cond })
    }

    fn local_decl(&mut self) -> Result<StatKind, ParseError> {
        let mut names = vec![self.expect_name()?];
        while self.accept(TokenKind::Comma).is_some() {
            names.push(self.expect_name()?);
        }
        let exprs = if self.accept(TokenKind::Assign).is_some() {
            self.expr_list()?
        } else {
            Vec::new()
        };
        Ok(StatKind::LocalDecl { names, exprs })
    }

    fn expr_stat(&mut self) -> Result<StatKind, ParseError> {
        let first = self.suffixed_expr()?;
        if self.check(TokenKind::Assign) || self.check(TokenKind::Comma) {
            let mut targets = vec![first];
            while self.accept(TokenKind::Comma).is_some() {
                targets.push(self.suffixed_expr()?);
            }
            for target in &targets {
                if !matches!(
                    target.kind,
                    ExprKind::Var(_) | ExprKind::Index { .. } | ExprKind::Field { .. }
                ) {
                    return Err(ParseError::new(
                        "syntax error: cannot assign to this expression",
                        target.span,
                    ));
                }
            }
            self.expect(TokenKind::Assign)?;
            let exprs = self.expr_list()?;
            return Ok(StatKind::Assign { targets, exprs });
        }
        if first.is_call() {
            return Ok(StatKind::Call(first));
        }
        Err(self.error_here(format!("syntax error near {}", self.near()), &["'='", "'('"]))
    }

    fn func_body(&mut self, open_line: u32) -> Result<FuncBody, ParseError> {
        let open = self.expect(TokenKind::LParen)?.span;
        let mut params = Vec::new();
        if !self.check(TokenKind::RParen) {
            params.push(self.expect_name()?);
            while self.accept(TokenKind::Comma).is_some() {
                params.push(self.expect_name()?);
            }
        }
        self.expect(TokenKind::RParen)?;
        let saved_loops = std::mem::replace(&mut self.loop_depth, 0);
        let body = self.block();
        self.loop_depth = saved_loops;
        let body = body?;
        let end = self
            .expect_closing(TokenKind::End, TokenKind::Function, open_line)?
            .span;
        Ok(FuncBody {
            params,
            body,
            span: open.cover(&end),
        })
    }

    // ----- expressions ---------------------------------------------------

    fn expr_list(&mut self) -> Result<Vec<Expr>, ParseError> {
        let mut exprs = vec![self.expr()?];
        while self.accept(TokenKind::Comma).is_some() {
            exprs.push(self.expr()?);
        }
        Ok(exprs)
    }

    pub(crate) fn expr(&mut self) -> Result<Expr, ParseError> {
        self.sub_expr(0)
    }

    /// Precedence climbing over binary operators whose left priority
    /// exceeds `limit`.
    fn sub_expr(&mut self, limit: u8) -> Result<Expr, ParseError> {
        self.enter()?;
        let result = self.sub_expr_inner(limit);
        self.leave();
        result
    }

    fn sub_expr_inner(&mut self, limit: u8) -> Result<Expr, ParseError> {
        let mut lhs = if let Some(op) = self.peek_kind().and_then(unary_op) {
            let op_span = self.advance().span;
            let operand = self.sub_expr(UNARY_PRIORITY)?;
            let span = op_span.cover(&operand.span);
            Expr::new(
                ExprKind::UnOp {
                    op,
                    operand: Box::new(operand),
                },
                span,
            )
        } else {
            self.simple_expr()?
        };
        while let Some(op) = self.peek_kind().and_then(binary_op) {
            let (left, right) = priority(op);
            if left <= limit {
                break;
            }
            self.advance();
            let rhs = self.sub_expr(right)?;
            let span = lhs.span.cover(&rhs.span);
            lhs = Expr::new(
                ExprKind::BinOp {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                span,
            );
        }
        Ok(lhs)
    }

    fn simple_expr(&mut self) -> Result<Expr, ParseError> {
        let Some(token) = self.peek() else {
            return Err(self.error_here("unexpected symbol near <eof>", &["<expression>"]));
        };
        let literal = match token.kind {
            TokenKind::Number => Some(Literal::Number(
                parse_number(&token.lexeme).expect("lexer validated numeral"),
            )),
            TokenKind::String => Some(Literal::Str(decode_string(&token.lexeme))),
            TokenKind::Nil => Some(Literal::Nil),
            TokenKind::True => Some(Literal::Boolean(true)),
            TokenKind::False => Some(Literal::Boolean(false)),
            _ => None,
        };
        if let Some(literal) = literal {
            self.advance();
            return Ok(Expr::new(ExprKind::Literal(literal), token.span));
        }
        match token.kind {
            TokenKind::LBrace => self.table_ctor(),
            TokenKind::Function => {
                let start = self.advance().span;
                let func = self.func_body(start.line)?;
                let span = start.cover(&func.span);
                Ok(Expr::new(ExprKind::Function(Arc::new(func)), span))
            }
            _ => self.suffixed_expr(),
        }
    }

    fn primary_expr(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Name => {
                self.advance();
                Ok(Expr::new(ExprKind::Var(t.lexeme.clone()), t.span))
            }
            Some(t) if t.kind == TokenKind::LParen => {
                let open_line = t.span.line;
                self.advance();
                let inner = self.expr()?;
                let close = self.expect_closing(TokenKind::RParen, TokenKind::LParen, open_line)?;
                Ok(Expr::new(ExprKind::Paren(Box::new(inner)), t.span.cover(&close.span)))
            }
            _ => Err(self.error_here(format!("unexpected symbol near {}", self.near()), &["<name>", "'('"])),
        }
    }

    fn suffixed_expr(&mut self) -> Result<Expr, ParseError> {
        let mut expr = self.primary_expr()?;
        loop {
            match self.peek_kind() {
                Some(TokenKind::Dot) => {
                    self.advance();
                    let name = self.expect_name()?;
                    let span = expr.span.cover(&name.span);
                    expr = Expr::new(
                        ExprKind::Field {
                            base: Box::new(expr),
                            name,
                        },
                        span,
                    );
                }
                Some(TokenKind::LBracket) => {
                    self.advance();
                    let key = self.expr()?;
                    let close = self.expect(TokenKind::RBracket)?.span;
                    let span = expr.span.cover(&close);
                    expr = Expr::new(
                        ExprKind::Index {
                            base: Box::new(expr),
                            key: Box::new(key),
                        },
                        span,
                    );
                }
                Some(TokenKind::LParen) => {
                    let open_line = self.advance().span.line;
                    let args = if self.check(TokenKind::RParen) {
                        Vec::new()
                    } else {
                        self.expr_list()?
                    };
                    let close = self
                        .expect_closing(TokenKind::RParen, TokenKind::LParen, open_line)?
                        .span;
                    let span = expr.span.cover(&close);
                    expr = Expr::new(
                        ExprKind::Call {
                            callee: Box::new(expr),
                            args,
                        },
                        span,
                    );
                }
                Some(TokenKind::Colon) => {
                    return Err(self.error_here("method call syntax ':' is not supported", &[]));
                }
                _ => return Ok(expr),
            }
        }
    }

    fn table_ctor(&mut self) -> Result<Expr, ParseError> {
        let open = self.advance().span;
        let mut fields = Vec::new();
        while !self.check(TokenKind::RBrace) {
            fields.push(self.table_field()?);
            if self.accept(TokenKind::Comma).is_none() && self.accept(TokenKind::Semicolon).is_none() {
                break;
            }
        }
        let close = self
            .expect_closing(TokenKind::RBrace, TokenKind::LBrace, open.line)?
            .span;
        Ok(Expr::new(ExprKind::TableCtor(fields), open.cover(&close)))
    }

    fn table_field(&mut self) -> Result<TableField, ParseError> {
        if self.accept(TokenKind::LBracket).is_some() {
            let key = self.expr()?;
            self.expect(TokenKind::RBracket)?;
            self.expect(TokenKind::Assign)?;
            let value = self.expr()?;
            return Ok(TableField::Keyed { key, value });
        }
        if self.check(TokenKind::Name) && self.peek_kind_at(1) == Some(TokenKind::Assign) {
            let name = self.expect_name()?;
            self.advance();
            let value = self.expr()?;
            return Ok(TableField::Named { name, value });
        }
        Ok(TableField::Positional(self.expr()?))
    }
}

const UNARY_PRIORITY: u8 = 12;

fn unary_op(kind: TokenKind) -> Option<UnOp> {
    Some(match kind {
        TokenKind::Minus => UnOp::Neg,
        TokenKind::Not => UnOp::Not,
        TokenKind::Hash => UnOp::Len,
        TokenKind::Tilde => UnOp::BitNot,
        _ => return None,
    })
}

fn binary_op(kind: TokenKind) -> Option<BinOp> {
    use TokenKind as T;
    Some(match kind {
        T::Or => BinOp::Or,
        T::And => BinOp::And,
        T::Eq => BinOp::Eq,
        T::NotEq => BinOp::NotEq,
        T::Less => BinOp::Less,
        T::LessEq => BinOp::LessEq,
        T::Greater => BinOp::Greater,
        T::GreaterEq => BinOp::GreaterEq,
        T::Pipe => BinOp::BitOr,
        T::Tilde => BinOp::BitXor,
        T::Ampersand => BinOp::BitAnd,
        T::ShiftLeft => BinOp::ShiftLeft,
        T::ShiftRight => BinOp::ShiftRight,
        T::Concat => BinOp::Concat,
        T::Plus => BinOp::Add,
        T::Minus => BinOp::Sub,
        T::Star => BinOp::Mul,
        T::Slash => BinOp::Div,
        T::Percent => BinOp::Mod,
        T::Caret => BinOp::Pow,
        _ => return None,
    })
}

/// (left, right) binding priorities. Right-associative operators have a
/// lower right priority.
fn priority(op: BinOp) -> (u8, u8) {
    use BinOp::*;
    match op {
        Or => (1, 1),
        And => (2, 2),
        Eq | NotEq | Less | LessEq | Greater | GreaterEq => (3, 3),
        BitOr => (4, 4),
        BitXor => (5, 5),
        BitAnd => (6, 6),
        ShiftLeft | ShiftRight => (7, 7),
        Concat => (9, 8),
        Add | Sub => (10, 10),
        Mul | Div | Mod => (11, 11),
        Pow => (14, 13),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_ok(src: &str) -> Chunk {
        parse_source(src).unwrap_or_else(|e| panic!("{src:?}: {e}"))
    }

    fn single_expr(src: &str) -> Expr {
        let chunk = parse_ok(&format!("x = {src}"));
        match chunk.block.stats.into_iter().next().unwrap().kind {
            StatKind::Assign { mut exprs, .. } => exprs.remove(0),
            other => panic!("unexpected {other:?}"),
        }
    }

    /// Fully parenthesized rendering for shape assertions.
    fn show(e: &Expr) -> String {
        match &e.kind {
            ExprKind::Literal(Literal::Number(n)) => format!("{n}"),
            ExprKind::Literal(Literal::Str(s)) => format!("{s:?}"),
            ExprKind::Literal(l) => format!("{l:?}"),
            ExprKind::Var(n) => n.clone(),
            ExprKind::BinOp { op, lhs, rhs } => {
                format!("({} {} {})", show(lhs), op.symbol(), show(rhs))
            }
            ExprKind::UnOp { op, operand } => format!("({op:?} {})", show(operand)),
            ExprKind::Paren(inner) => show(inner),
            ExprKind::Call { callee, args } => format!(
                "{}({})",
                show(callee),
                args.iter().map(show).collect::<Vec<_>>().join(", ")
            ),
            ExprKind::Field { base, name } => format!("{}.{}", show(base), name.text),
            ExprKind::Index { base, key } => format!("{}[{}]", show(base), show(key)),
            other => format!("{other:?}"),
        }
    }

    #[test]
    fn call_statement() {
        let chunk = parse_ok("DrawCube(\"triangles\")");
        assert_eq!(chunk.block.stats.len(), 1);
        let StatKind::Call(call) = &chunk.block.stats[0].kind else {
            panic!()
        };
        let ExprKind::Call { callee, args } = &call.kind else {
            panic!()
        };
        assert_eq!(callee.kind, ExprKind::Var("DrawCube".into()));
        assert_eq!(args.len(), 1);
        assert_eq!(args[0].kind, ExprKind::Literal(Literal::Str("triangles".into())));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(show(&single_expr("1 + 2 * 3")), "(1 + (2 * 3))");
        assert_eq!(show(&single_expr("1 - 2 - 3")), "((1 - 2) - 3)");
        assert_eq!(show(&single_expr("2 ^ 3 ^ 2")), "(2 ^ (3 ^ 2))");
        assert_eq!(show(&single_expr("a .. b .. c")), "(a .. (b .. c))");
        assert_eq!(show(&single_expr("-x ^ 2")), "(Neg (x ^ 2))");
        assert_eq!(show(&single_expr("not a == b")), "((Not a) == b)");
        assert_eq!(show(&single_expr("a or b and c")), "(a or (b and c))");
        assert_eq!(show(&single_expr("1 + 2 .. 3")), "((1 + 2) .. 3)");
        assert_eq!(show(&single_expr("a | b ~ c & d << 1")), "(a | (b ~ (c & (d << 1))))");
        assert_eq!(show(&single_expr("a < b == true")), "((a < b) == Boolean(true))");
        assert_eq!(show(&single_expr("#t + 1")), "((Len t) + 1)");
        assert_eq!(show(&single_expr("(1 + 2) * 3")), "((1 + 2) * 3)");
        assert_eq!(show(&single_expr("a.b[c](d)")), "a.b[c](d)");
    }

    #[test]
    fn numeric_for_default_step() {
        let chunk = parse_ok("for i = 1, 10 do x = x + i end");
        let StatKind::NumericFor {
            name,
            start,
            stop,
            step,
            body,
        } = &chunk.block.stats[0].kind
        else {
            panic!()
        };
        assert_eq!(name.text, "i");
        assert_eq!(start.kind, ExprKind::Literal(Literal::Number(1.0)));
        assert_eq!(stop.kind, ExprKind::Literal(Literal::Number(10.0)));
        assert_eq!(step.kind, ExprKind::Literal(Literal::Number(1.0)));
        assert_eq!(body.stats.len(), 1);
    }

    #[test]
    fn if_arms() {
        let chunk = parse_ok("if a then x = 1 elseif b then x = 2 elseif c then else x = 4 end");
        let StatKind::If { arms, else_body } = &chunk.block.stats[0].kind else {
            panic!()
        };
        assert_eq!(arms.len(), 3);
        assert!(arms[2].1.stats.is_empty());
        assert_eq!(else_body.as_ref().unwrap().stats.len(), 1);
    }

    #[test]
    fn statement_forms() {
        let chunk = parse_ok(
            "local a, b = 1, 2\n\
             local function f(x, y) return x end\n\
             function g() end\n\
             a, b = b, a\n\
             t = {1, 2; x = 3, [4] = 5,}\n\
             while a do break end\n\
             repeat local z = 1 until z\n\
             f(g)\n\
             return a",
        );
        let kinds: Vec<_> = chunk
            .block
            .stats
            .iter()
            .map(|s| std::mem::discriminant(&s.kind))
            .collect();
        assert_eq!(kinds.len(), 8);
        assert!(chunk.block.last_stat.is_some());
    }

    #[test]
    fn keyword_as_name_is_error() {
        let err = parse_source("local = 3").unwrap_err();
        assert_eq!(err.line(), 1);
        assert!(err.message.contains("<name> expected"), "{}", err.message);
        assert!(parse_source("end = 1").is_err());
        assert!(parse_source("local function = 1").is_err());
    }

    #[test]
    fn error_lines() {
        let cases = [
            ("x = 1\ny = = 2\n", 2),
            ("if x then\n  y = 1\n", 3),
            ("f(\n1,\n", 3),
            ("x = 1\nbreak\n", 2),
            ("x = 1\n\nlocal t = {1, 2\nx = 3", 4),
            ("a.b:c()", 1),
            ("x = 1 + \n\n", 3),
            ("return 1\nx = 2", 2),
            ("for i in pairs(t) do end", 1),
        ];
        for (src, line) in cases {
            let err = parse_source(src).unwrap_err();
            assert_eq!(err.line(), line, "{src:?}: {err}");
        }
    }

    #[test]
    fn expression_statement_must_be_call() {
        let err = parse_source("x").unwrap_err();
        assert!(err.message.contains("syntax error"));
        assert!(parse_source("(f)").is_err());
        assert!(parse_source("f() = 1").is_err());
        assert!(parse_source("(a) = 1").is_err());
    }

    #[test]
    fn break_inside_function_inside_loop_is_rejected() {
        assert!(parse_source("while true do local f = function() break end end").is_err());
        assert!(parse_source("while true do if x then break end end").is_ok());
        assert!(parse_source("repeat break until true").is_ok());
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let src = format!("x = {}1{}", "(".repeat(1000), ")".repeat(1000));
        let err = parse_source(&src).unwrap_err();
        assert!(err.message.contains("syntax levels"));
    }

    #[test]
    fn parse_from_tokens_matches_parse_source() {
        let src = "local x = 1\nprint(x + 2)\n";
        let tokens = tokenize(src).unwrap();
        assert_eq!(parse(&tokens).unwrap().block, parse_source(src).unwrap().block);
    }
}
