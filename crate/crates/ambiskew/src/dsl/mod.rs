//! The `.ask` specification language: declarations of a scalar field,
//! coefficient algebras, automorphisms and rings, followed by check
//! directives. See the README for the grammar.

pub mod ast;
mod build;
mod eval;
mod lexer;
mod parser;

use std::fmt;

pub use ast::Document;
pub use build::{CheckKind, CheckSpec, Entity, SpecDocument};
pub use parser::{parse_document, parse_expr};

/// A 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslError {
    pub kind: ErrorKind,
    pub span: Span,
    pub message: String,
}

impl DslError {
    pub fn new(kind: ErrorKind, span: Span, message: impl Into<String>) -> Self {
        DslError { kind, span, message: message.into() }
    }

    pub(crate) fn semantic(span: Span, message: impl Into<String>) -> Self {
        DslError::new(ErrorKind::Semantic, span, message)
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ErrorKind::Lexical => "lexical",
            ErrorKind::Syntax => "syntax",
            ErrorKind::Semantic => "semantic",
        };
        write!(f, "{}: {kind} error: {}", self.span, self.message)
    }
}

impl std::error::Error for DslError {}

/// Parses and validates a document: every declaration is built, so invalid
/// automorphisms or ring data are reported here with their location.
pub fn parse_spec(text: &str) -> Result<SpecDocument, DslError> {
    let ast = parse_document(text)?;
    SpecDocument::build(ast)
}
