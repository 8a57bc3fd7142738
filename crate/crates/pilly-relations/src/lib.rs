//! Definable relations: formation, normal forms, the constructions for
//! each type former, admissibility derivations and the schemas of the logic.

pub mod admissible;
pub mod construct;
pub mod normal;
pub mod schema;
pub mod wf;

pub use admissible::{derive_admissible, is_admissible, AdmError, AdmRule, Derivation, Equivalence};
pub use construct::{arrow, bang, bang_pairs, closure, closure_contains, eq, forall_rel, graph, lolli, reindex, tensor, type_rel, unit, TypedRel};
pub use normal::{normalize_prop, normalize_relation, unfold_prop, unfold_relation};
pub use schema::{identity_extension, lrl, parametricity};
pub use wf::{check_context, check_prop, check_relation, relation_type};

use pilly_typecheck::TypeError;

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum RelError {
    #[error("unbound relation variable `{0}`")]
    UnboundRelation(String),
    #[error("expected {expected} relation arguments, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("{what}: expected type {expected}, found {found}")]
    Mismatch {
        what: String,
        expected: String,
        found: String,
    },
    #[error("ill-formed relation: {0}")]
    Ill(String),
    #[error(transparent)]
    Type(#[from] TypeError),
}

impl RelError {
    pub fn code(&self) -> &'static str {
        match self {
            RelError::UnboundRelation(_) => "UnboundRelation",
            RelError::Arity { .. } => "RelationArity",
            RelError::Mismatch { .. } => "RelationTypeMismatch",
            RelError::Ill(_) => "IllFormedRelation",
            RelError::Type(e) => e.code(),
        }
    }
}
