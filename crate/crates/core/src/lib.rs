//! Class flattening for a Java subset.
//!
//! A flattened class is the class as it really behaves: its own members plus
//! every inherited attribute and method it can reach, pulled down from the
//! superclass chain. Overridden superclass members are renamed (`name$Owner`)
//! and the references to them rewritten; private members that nothing
//! pulled down can reach are dropped as anomalies.
//!
//! The pipeline is [`syntax`] (lexer and parser) → [`model`] (inheritance,
//! member tables, override relations, access graph) → [`flatten`] (decision
//! rules, renaming, reference rewriting) → [`emit`] (canonical Java output).
//! [`metrics`] measures size, cohesion and coupling on either view, and
//! [`advisory`] says which view suits which use.

pub mod advisory;
pub mod cli;
pub mod diag;
pub mod emit;
pub mod flatten;
pub mod metrics;
pub mod model;
pub mod pipeline;
pub mod report;
pub mod syntax;

pub use diag::{DiagCode, Diagnostic};
pub use emit::{EmitOptions, Indent, Newline};
pub use model::{ClassModel, ModelError};
pub use syntax::{SourceMap, SyntaxError};
