//! Textual syntax for terms and ordinals, plus the JSON AST.
//!
//! The input language is ASCII-first: `a^b` is exponentiation, `k` carets
//! are `k` arrows, `a ^[E] b` takes an arbitrary term as the arrow count.
//! `↑` is accepted anywhere a caret is. See [`parser`] for the grammar.

pub mod json;
mod lexer;
pub mod parser;
mod printer;

use std::fmt;

pub use parser::{parse_ordinal, parse_term, MAX_NESTING};
pub use printer::{print_ordinal, print_term};

/// A syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
    pub message: Option<String>,
}

impl ParseError {
    pub(crate) fn new(offset: usize, expected: Vec<String>, found: String) -> ParseError {
        ParseError {
            offset,
            expected,
            found,
            message: None,
        }
    }

    pub(crate) fn with_message(offset: usize, message: String) -> ParseError {
        ParseError {
            offset,
            expected: Vec::new(),
            found: String::new(),
            message: Some(message),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: ", self.offset)?;
        if let Some(m) = &self.message {
            return f.write_str(m);
        }
        match self.expected.as_slice() {
            [one] => write!(f, "expected {one}")?,
            many => write!(f, "expected one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}
