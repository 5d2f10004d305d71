//! The identity-description language: a small text format for univariate
//! "sum side = product side" identities.
//!
//! ```text
//! # comments run to the end of the line
//! identity rr1 : sum(j>=0) q^(j^2) / poch(q^1; q^1; j) == resprod(5; 1,4)
//! ```

mod lexer;
mod parser;
mod printer;

use std::fmt;

use serde::Serialize;

pub use lexer::{tokenize, Token, TokenKind, MAX_LITERAL};
pub use parser::{parse_expr, parse_idl, Expr};
pub use printer::{print_identity, print_idl, PrintError};

/// A syntax or validation error at a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
    /// What would have been accepted at this point; empty when the token was
    /// well-formed but meaningless.
    pub expected: Vec<String>,
    /// The text parsed but the identity it describes is not admissible.
    pub validation: bool,
}

impl ParseError {
    pub(crate) fn new(message: impl Into<String>, line: usize, column: usize, expected: Vec<String>) -> ParseError {
        ParseError { message: message.into(), line, column, expected, validation: false }
    }

    pub(crate) fn at(tok: &Token, message: impl Into<String>, expected: Vec<String>) -> ParseError {
        ParseError::new(message, tok.line, tok.column, expected)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        match self.expected.as_slice() {
            [] => Ok(()),
            [one] => write!(f, " (expected {one})"),
            many => write!(f, " (expected one of {})", many.join(", ")),
        }
    }
}
