//! Concrete syntax for `.pilly` files: declarations, directives, and the
//! grammars of types, terms, relations and propositions.
//!
//! Earlier declarations are expanded in place while parsing, so every
//! parsed object is expressed in the core calculus alone.

pub mod ast;
pub mod diag;
pub mod lexer;
pub mod parser;

pub use ast::{Decl, DeclKind, Directive, SchemaRequest, Signature, SourceFile};
pub use diag::{Diagnostic, ParseError, Severity, Span};
pub use parser::{
    parse_file, parse_file_lossy, parse_file_with, parse_prop, parse_prop_in, parse_relation,
    parse_relation_in, parse_term, parse_term_in, parse_type, parse_type_in, sum_type, zero_type,
};
