//! Directed rewriting for the external equality of terms.
//!
//! [`step`] performs one leftmost-outermost reduction: β for every
//! introduction/elimination pair, commuting conversions oriented so that
//! let-bindings float outwards, and η as a contraction. `Y` is never
//! unrolled by [`step`]; [`unroll_y`] does that explicitly and [`equal`]
//! uses it within a budget.

mod equal;
mod step;

pub use equal::{equal, equal_typed, normalize, normalize_with_unrolls, EqResult, Normalized, Unknown};
pub use step::{find_y_redex, step, step_with_rule, unroll_y, Rule};

use pilly_core::{print_term, Term};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteConfig {
    /// Maximum number of rewrite steps per normalization.
    pub fuel: usize,
    /// Maximum number of `Y` unrollings per side in equality queries.
    pub y_unroll_budget: usize,
    pub eta: bool,
}

impl Default for RewriteConfig {
    fn default() -> Self {
        RewriteConfig {
            fuel: 10_000,
            y_unroll_budget: 0,
            eta: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("fuel exhausted after {steps} steps at `{}`", print_term(.last))]
    FuelExhausted { last: Term, steps: usize },
    #[error("no subterm of the form `Y [s] !f`")]
    NoYRedex,
    #[error("terms have different types `{left}` and `{right}`")]
    TypeMismatch { left: String, right: String },
    #[error(transparent)]
    IllTyped(#[from] pilly_typecheck::TypeError),
}
