//! Kind checking and type inference for linear polymorphic terms.

mod check;
mod error;
mod lemma;

pub use check::{check, check_context, elaborate, infer, kind_check, type_of, Typing};
pub use error::{Expected, TypeError};
pub use lemma::{check_substitution_lemma, LemmaError, Substitution};

#[cfg(feature = "gen")]
pub mod gen;
