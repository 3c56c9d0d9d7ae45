//! Concept language, knowledge-base types and the textual document format.

mod ast;
mod ext_nat;
mod lexer;
mod parser;
pub mod render;

pub use ast::*;
pub use ext_nat::{ExtendedNat, Finite, Infinity};
pub use parser::{parse_concept, parse_document, parse_statement, ParseError, ParseErrorKind};
