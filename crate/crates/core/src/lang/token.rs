use std::fmt;

use super::span::SourceSpan;

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    /// Exactly the source slice covered by `span`.
    pub lexeme: String,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Name,
    Number,
    String,

    // keywords
    Local,
    While,
    Do,
    End,
    If,
    Then,
    Elseif,
    Else,
    For,
    Repeat,
    Until,
    Function,
    Return,
    Break,
    Nil,
    True,
    False,
    Or,
    And,
    Not,

    // operators
    Eq,         // ==
    NotEq,      // ~=
    GreaterEq,  // >=
    LessEq,     // <=
    Greater,    // >
    Less,       // <
    Pipe,       // |
    Tilde,      // ~
    Ampersand,  // &
    ShiftRight, // >>
    ShiftLeft,  // <<
    Concat,     // ..
    Minus,      // -
    Plus,       // +
    Percent,    // %
    Slash,      // /
    Star,       // *
    Caret,      // ^
    Hash,       // #
    Assign,     // =

    // delimiters
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semicolon,
    Dot,
    Colon,
}

impl TokenKind {
    pub fn keyword(word: &str) -> Option<TokenKind> {
        use TokenKind::*;
        Some(match word {
            "local" => Local,
            "while" => While,
            "do" => Do,
            "end" => End,
            "if" => If,
            "then" => Then,
            "elseif" => Elseif,
            "else" => Else,
            "for" => For,
            "repeat" => Repeat,
            "until" => Until,
            "function" => Function,
            "return" => Return,
            "break" => Break,
            "nil" => Nil,
            "true" => True,
            "false" => False,
            "or" => Or,
            "and" => And,
            "not" => Not,
            _ => return None,
        })
    }

    pub fn is_keyword(self) -> bool {
        use TokenKind::*;
        matches!(
            self,
            Local
                | While
                | Do
                | End
                | If
                | Then
                | Elseif
                | Else
                | For
                | Repeat
                | Until
                | Function
                | Return
                | Break
                | Nil
                | True
                | False
                | Or
                | And
                | Not
        )
    }

    /// Human-readable description used in "expected ..." lists.
    pub fn describe(self) -> &'static str {
        use TokenKind::*;
        match self {
            Name => "<name>",
            Number => "<number>",
            String => "<string>",
            Local => "'local'",
            While => "'while'",
            Do => "'do'",
            End => "'end'",
            If => "'if'",
            Then => "'then'",
            Elseif => "'elseif'",
            Else => "'else'",
            For => "'for'",
            Repeat => "'repeat'",
            Until => "'until'",
            Function => "'function'",
            Return => "'return'",
            Break => "'break'",
            Nil => "'nil'",
            True => "'true'",
            False => "'false'",
            Or => "'or'",
            And => "'and'",
            Not => "'not'",
            Eq => "'=='",
            NotEq => "'~='",
            GreaterEq => "'>='",
            LessEq => "'<='",
            Greater => "'>'",
            Less => "'<'",
            Pipe => "'|'",
            Tilde => "'~'",
            Ampersand => "'&'",
            ShiftRight => "'>>'",
            ShiftLeft => "'<<'",
            Concat => "'..'",
            Minus => "'-'",
            Plus => "'+'",
            Percent => "'%'",
            Slash => "'/'",
            Star => "'*'",
            Caret => "'^'",
            Hash => "'#'",
            Assign => "'='",
            LParen => "'('",
            RParen => "')'",
            LBracket => "'['",
            RBracket => "']'",
            LBrace => "'{'",
            RBrace => "'}'",
            Comma => "','",
            Semicolon => "';'",
            Dot => "'.'",
            Colon => "':'",
        }
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}
