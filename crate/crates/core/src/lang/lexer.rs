use super::error::ParseError;
use super::span::SourceSpan;
use super::token::{Token, TokenKind};

/// Split `source` into tokens. Whitespace and comments are skipped; every
/// token's lexeme is the exact source slice of its span.
pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    Lexer::new(source).run()
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: u32,
    column: u32,
}

#[derive(Clone, Copy)]
struct Mark {
    pos: usize,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn mark(&self) -> Mark {
        Mark {
            pos: self.pos,
            line: self.line,
            column: self.column,
        }
    }

    fn span_from(&self, start: Mark) -> SourceSpan {
        SourceSpan::new(start.line, start.column, start.pos, self.pos - start.pos)
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn peek_at(&self, ahead: usize) -> Option<u8> {
        self.bytes.get(self.pos + ahead).copied()
    }

    /// Advance over one full character, keeping line/column in sync.
    fn bump(&mut self) {
        let Some(ch) = self.src[self.pos..].chars().next() else {
            return;
        };
        self.pos += ch.len_utf8();
        if ch == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
    }

    fn bump_n(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    fn run(mut self) -> Result<Vec<Token>, ParseError> {
        let mut tokens = Vec::new();
        loop {
            self.skip_trivia()?;
            let Some(c) = self.peek() else {
                return Ok(tokens);
            };
            let start = self.mark();
            let kind = self.lex_token(c, start)?;
            let span = self.span_from(start);
            tokens.push(Token {
                kind,
                lexeme: self.src[start.pos..self.pos].to_string(),
                span,
            });
        }
    }

    fn skip_trivia(&mut self) -> Result<(), ParseError> {
        loop {
            match self.peek() {
                Some(b' ' | b'\t' | b'\r' | b'\n' | 0x0b | 0x0c) => self.bump(),
                Some(b'-') if self.peek_at(1) == Some(b'-') => self.skip_comment()?,
                _ => return Ok(()),
            }
        }
    }

    fn skip_comment(&mut self) -> Result<(), ParseError> {
        let start = self.mark();
        self.bump_n(2);
        if let Some(level) = self.long_bracket_level() {
            self.skip_long_bracket(level).map_err(|_| {
                // Reported where the input ran out, naming where it began.
                let at_eof = self.span_from(self.mark());
                ParseError::new(
                    format!("unfinished long comment (starting at line {})", start.line),
                    at_eof,
                )
            })
        } else {
            while let Some(c) = self.peek() {
                if c == b'\n' {
                    break;
                }
                self.bump();
            }
            Ok(())
        }
    }

    /// If positioned at `[`, `[=`, `[==` ... followed by `[`, return the level.
    fn long_bracket_level(&self) -> Option<usize> {
        if self.peek() != Some(b'[') {
            return None;
        }
        let mut level = 0;
        while self.peek_at(1 + level) == Some(b'=') {
            level += 1;
        }
        (self.peek_at(1 + level) == Some(b'[')).then_some(level)
    }

    fn skip_long_bracket(&mut self, level: usize) -> Result<(), ()> {
        self.bump_n(level + 2);
        loop {
            match self.peek() {
                None => return Err(()),
                Some(b']') => {
                    let closes =
                        (0..level).all(|i| self.peek_at(1 + i) == Some(b'=')) && self.peek_at(1 + level) == Some(b']');
                    if closes {
                        self.bump_n(level + 2);
                        return Ok(());
                    }
                    self.bump();
                }
                Some(_) => self.bump(),
            }
        }
    }

    fn lex_token(&mut self, c: u8, start: Mark) -> Result<TokenKind, ParseError> {
        use TokenKind::*;
        if c.is_ascii_alphabetic() || c == b'_' {
            while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
                self.bump();
            }
            let word = &self.src[start.pos..self.pos];
            return Ok(TokenKind::keyword(word).unwrap_or(Name));
        }
        if c.is_ascii_digit() || (c == b'.' && matches!(self.peek_at(1), Some(d) if d.is_ascii_digit())) {
            return self.lex_number(start);
        }
        if c == b'"' || c == b'\'' {
            return self.lex_string(c, start);
        }
        let two = |a: u8, b: u8| c == a && self.peek_at(1) == Some(b);
        let (kind, len) = if two(b'=', b'=') {
            (Eq, 2)
        } else if two(b'~', b'=') {
            (NotEq, 2)
        } else if two(b'>', b'=') {
            (GreaterEq, 2)
        } else if two(b'<', b'=') {
            (LessEq, 2)
        } else if two(b'>', b'>') {
            (ShiftRight, 2)
        } else if two(b'<', b'<') {
            (ShiftLeft, 2)
        } else if two(b'.', b'.') {
            (Concat, 2)
        } else {
            let kind = match c {
                b'>' => Greater,
                b'<' => Less,
                b'|' => Pipe,
                b'~' => Tilde,
                b'&' => Ampersand,
                b'-' => Minus,
                b'+' => Plus,
                b'%' => Percent,
                b'/' => Slash,
                b'*' => Star,
                b'^' => Caret,
                b'#' => Hash,
                b'=' => Assign,
                b'(' => LParen,
                b')' => RParen,
                b'[' => LBracket,
                b']' => RBracket,
                b'{' => LBrace,
                b'}' => RBrace,
                b',' => Comma,
                b';' => Semicolon,
                b'.' => Dot,
                b':' => Colon,
                _ => {
                    self.bump();
                    let span = self.span_from(start);
                    let shown = &self.src[start.pos..self.pos];
                    return Err(ParseError::new(
                        format!("unexpected character '{}'", shown.escape_default()),
                        span,
                    ));
                }
            };
            (kind, 1)
        };
        self.bump_n(len);
        Ok(kind)
    }

    fn lex_number(&mut self, start: Mark) -> Result<TokenKind, ParseError> {
        // Read greedily like the reference lexer, then validate the whole run.
        let is_hex = self.peek() == Some(b'0') && matches!(self.peek_at(1), Some(b'x' | b'X'));
        let exponent_chars: &[u8] = if is_hex { b"pP" } else { b"eE" };
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_alphanumeric() || b == b'_' || b == b'.' => {
                    self.bump();
                    if exponent_chars.contains(&b) && matches!(self.peek(), Some(b'+' | b'-')) {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let text = &self.src[start.pos..self.pos];
        match parse_number(text) {
            Some(value) if value.is_finite() => Ok(TokenKind::Number),
            Some(_) => Err(ParseError::new(
                format!("number '{text}' is out of range"),
                self.span_from(start),
            )),
            None => Err(ParseError::new(
                format!("malformed number near '{text}'"),
                self.span_from(start),
            )),
        }
    }

    fn lex_string(&mut self, quote: u8, start: Mark) -> Result<TokenKind, ParseError> {
        self.bump();
        loop {
            match self.peek() {
                None | Some(b'\n') => {
                    return Err(ParseError::new("unfinished string", self.span_from(start)));
                }
                Some(b'\\') => {
                    let escape_start = self.mark();
                    self.bump();
                    match self.peek() {
                        Some(b'n' | b't' | b'r' | b'0' | b'\\' | b'"' | b'\'') => self.bump(),
                        None => return Err(ParseError::new("unfinished string", self.span_from(start))),
                        Some(_) => {
                            self.bump();
                            return Err(ParseError::new("invalid escape sequence", self.span_from(escape_start)));
                        }
                    }
                }
                Some(c) if c == quote => {
                    self.bump();
                    return Ok(TokenKind::String);
                }
                Some(_) => self.bump(),
            }
        }
    }
}

/// Parse a numeral as accepted by the language: decimal integer, decimal
/// float with optional exponent, or hexadecimal integer. Leading and
/// trailing whitespace is not accepted here.
pub fn parse_number(text: &str) -> Option<f64> {
    if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        if hex.is_empty() || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return None;
        }
        // Wraps modulo 2^64 like the reference integer conversion.
        let value = hex
            .bytes()
            .fold(0u64, |acc, b| acc.wrapping_mul(16).wrapping_add(hex_digit(b)));
        return Some(value as i64 as f64);
    }
    let bytes = text.as_bytes();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let from = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        *i - from
    };
    let int_digits = digits(&mut i);
    let mut frac_digits = 0;
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        frac_digits = digits(&mut i);
    }
    if int_digits + frac_digits == 0 {
        return None;
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        i += 1;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            i += 1;
        }
        if digits(&mut i) == 0 {
            return None;
        }
    }
    if i != bytes.len() {
        return None;
    }
    text.parse::<f64>().ok()
}

fn hex_digit(b: u8) -> u64 {
    (b as char).to_digit(16).unwrap_or(0) as u64
}

/// Decode the body of a validated string token (quotes included).
pub fn decode_string(lexeme: &str) -> String {
    let inner = &lexeme[1..lexeme.len() - 1];
    let mut out = String::with_capacity(inner.len());
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('n') => out.push('\n'),
            Some('t') => out.push('\t'),
            Some('r') => out.push('\r'),
            Some('0') => out.push('\0'),
            Some(other) => out.push(other),
            None => {}
        }
    }
    out
}
