//! Types as functors: which way each type variable varies, and the term
//! that lifts a pair of maps through a type.

mod action;
mod polarity;

pub use action::{action_type, apply_action, check_functor_laws, synthesize_m, Arrow, FunctorLaws};
pub use polarity::{polarity, split_occurrences, Polarity, SplitType};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("`{var}` occurs {found} in `{ty}`")]
    PolarityViolation {
        var: String,
        found: &'static str,
        ty: String,
    },
    #[error("`{0}` is not built from type variables and closed types")]
    NotInductivelyConstructed(String),
    #[error(transparent)]
    Type(#[from] pilly_typecheck::TypeError),
    #[error(transparent)]
    Rewrite(#[from] pilly_rewrite::RewriteError),
}
