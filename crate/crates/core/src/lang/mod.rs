//! Lexer, syntax tree and recursive-descent parser for the scripting
//! language.

pub mod ast;
mod error;
mod lexer;
mod parser;
mod span;
mod token;

pub use error::ParseError;
pub use lexer::{decode_string, parse_number, tokenize};
pub use parser::{parse, parse_count, parse_source, MAX_SYNTAX_DEPTH};
pub use span::SourceSpan;
pub use token::{Token, TokenKind};
