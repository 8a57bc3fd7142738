use pilly_core::{fresh::surface, print_type, Type};
use std::fmt;
use thiserror::Error;

/// What a mismatch expected: either a concrete type or a type former.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    Type(Type),
    Shape(&'static str),
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Type(t) => write!(f, "`{}`", print_type(t)),
            Expected::Shape(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("linear variable `{0}` is never used")]
    LinearVariableUnused(String),
    #[error("linear variable `{0}` is used more than once")]
    LinearVariableReused(String),
    #[error("linear variable `{0}` occurs under `!`")]
    LinearInBangBody(String),
    #[error("type mismatch: expected {expected}, found `{}`", print_type(.found))]
    TypeMismatch { expected: Expected, found: Type },
    #[error("`{}` is not a function type", print_type(.0))]
    NotAFunction(Type),
    #[error("`{}` is not a polymorphic type", print_type(.0))]
    NotAForall(Type),
    #[error("ill-kinded type `{ty}`: {reason}")]
    IllKinded { ty: String, reason: String },
    #[error("ill-formed context: {0}")]
    ContextIllFormed(String),
}

impl TypeError {
    pub(crate) fn mismatch(expected: Type, found: Type) -> Self {
        TypeError::TypeMismatch {
            expected: Expected::Type(expected),
            found,
        }
    }

    pub(crate) fn shape(expected: &'static str, found: Type) -> Self {
        TypeError::TypeMismatch {
            expected: Expected::Shape(expected),
            found,
        }
    }

    pub(crate) fn unused(name: &str) -> Self {
        TypeError::LinearVariableUnused(surface(name).to_string())
    }

    pub(crate) fn reused(name: &str) -> Self {
        TypeError::LinearVariableReused(surface(name).to_string())
    }

    /// A short machine-readable name for the variant.
    pub fn code(&self) -> &'static str {
        match self {
            TypeError::UnboundVariable(_) => "UnboundVariable",
            TypeError::LinearVariableUnused(_) => "LinearVariableUnused",
            TypeError::LinearVariableReused(_) => "LinearVariableReused",
            TypeError::LinearInBangBody(_) => "LinearInBangBody",
            TypeError::TypeMismatch { .. } => "TypeMismatch",
            TypeError::NotAFunction(_) => "NotAFunction",
            TypeError::NotAForall(_) => "NotAForall",
            TypeError::IllKinded { .. } => "IllKinded",
            TypeError::ContextIllFormed(_) => "ContextIllFormed",
        }
    }
}
