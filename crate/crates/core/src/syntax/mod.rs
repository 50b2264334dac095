//! Lexing and parsing of the supported Java subset.
//!
//! The grammar is deliberately small: one top-level class per file, fields,
//! methods and constructors with `public`/`protected`/`private` (or package)
//! visibility plus `static`/`final`, and method bodies made of locals,
//! assignments, calls, field accesses, `this`/`super`, `new`, arithmetic,
//! relational and logical operators, and `if`/`while`/`return` blocks.
//! Anything outside it is rejected with [`SyntaxError::Unsupported`].

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod span;

pub use ast::*;
pub use lexer::{is_identifier, reconstruct, tokenize, tokenize_file, LexError, LexErrorKind, Token, TokenKind};
pub use parser::{parse, parse_file, parse_source, SyntaxError};
pub use span::{FileId, SourceFile, SourceMap, Span};
