//! Syntax of the polymorphic intuitionistic/linear lambda calculus with a
//! fixed-point constant, together with the definable relations and
//! propositions of its relational logic.
//!
//! Bound variables are de Bruijn indices; binders keep a [`Hint`] for the
//! printer. Because hints are ignored by equality, `==` is α-equivalence.

pub mod build;
pub mod context;
pub mod fresh;
pub mod pretty;
pub mod subst;
pub mod syntax;

pub use context::{RelContext, RelEntry, TermContext};
pub use fresh::fresh;
pub use pretty::{print_prop, print_prop_with, print_relation, print_term, print_term_with, print_type, print_type_with, PrintOptions};
pub use subst::{Depth, Sort, Syntax};
pub use syntax::{Binder, Flavor, Hint, Kind, Prop, Quantifier, Relation, Term, Type, Var};

/// The type of `Y`: `all a. !(!a -o a) -o a`.
pub fn y_type() -> Type {
    let a = Type::Var(Var::Bound(0));
    Type::Forall(
        Hint::new("a"),
        Box::new(Type::lolli(Type::bang(Type::lolli(Type::bang(a.clone()), a.clone())), a)),
    )
}

/// α-equivalence. Structural equality already is α-equivalence; this exists
/// for readability at call sites.
pub fn alpha_eq<T: PartialEq>(a: &T, b: &T) -> bool {
    a == b
}

#[cfg(feature = "gen")]
pub mod gen;
