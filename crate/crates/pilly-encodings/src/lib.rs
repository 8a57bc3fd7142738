//! Datatypes encoded with polymorphism, each bundled with its combinators,
//! the laws that hold by rewriting alone, and the laws that need
//! parametricity.

mod basic;
mod data;
mod fixpoint;
mod rec;
mod types;

pub use basic::{encode_iso_self, encode_one, encode_tensor, encode_unit, encode_zero};
pub use data::{encode_exists, encode_nat, encode_product, encode_sum};
pub use fixpoint::{encode_mu, encode_nu};
pub use rec::{encode_rec, encode_rec_with_params, RecParams};
pub use types::{exists_type, nat_type, product_type, sum_type, zero_type, Functor};

use std::fmt;

use pilly_core::build::{ilam, ty_lams};
use pilly_core::{print_prop_with, print_term_with, print_type_with, PrintOptions, Prop, RelContext, Syntax, Term, TermContext, Type};
use pilly_relations::{check_prop, RelError};
use pilly_rewrite::{equal_typed, EqResult, RewriteConfig, RewriteError};
use pilly_typecheck::{check, TypeError};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("`{var}` occurs {found} in `{ty}`")]
    PolarityViolation {
        var: String,
        found: &'static str,
        ty: String,
    },
    #[error("`{0}` is not built from type variables and closed types")]
    NotInductivelyConstructed(String),
    #[error("bundle `{0}` has free type variables and cannot be written as declarations")]
    OpenBundle(String),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Rel(#[from] RelError),
}

impl From<pilly_functor::FunctorError> for EncodingError {
    fn from(e: pilly_functor::FunctorError) -> Self {
        use pilly_functor::FunctorError as F;
        match e {
            F::PolarityViolation { var, found, ty } => EncodingError::PolarityViolation { var, found, ty },
            F::NotInductivelyConstructed(ty) => EncodingError::NotInductivelyConstructed(ty),
            F::Type(e) => EncodingError::Type(e),
            F::Rewrite(e) => unreachable!("building an action never rewrites: {e}"),
        }
    }
}

impl EncodingError {
    pub fn code(&self) -> &'static str {
        match self {
            EncodingError::PolarityViolation { .. } => "PolarityViolation",
            EncodingError::NotInductivelyConstructed(_) => "NotInductivelyConstructed",
            EncodingError::OpenBundle(_) => "OpenBundle",
            EncodingError::Type(e) => e.code(),
            EncodingError::Rel(e) => e.code(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combinator {
    pub name: String,
    pub term: Term,
    pub ty: Type,
}

/// An equation between open terms, expected to hold by rewriting. Free
/// names of the sides are either context entries or combinators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaLaw {
    pub name: String,
    pub ctx: TermContext,
    pub lhs: Term,
    pub rhs: Term,
}

/// A statement whose proof needs parametricity. Free term names are
/// combinators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaLaw {
    pub name: String,
    pub prop: Prop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingBundle {
    pub name: String,
    pub defined_type: Type,
    /// Free type variables of the inputs, in scope everywhere.
    pub xi: Vec<String>,
    pub combinators: Vec<Combinator>,
    pub beta_laws: Vec<BetaLaw>,
    pub schema_laws: Vec<SchemaLaw>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleReport {
    pub combinators: Vec<(String, Result<(), TypeError>)>,
    pub beta_laws: Vec<(String, Result<EqResult, RewriteError>)>,
    pub schema_laws: Vec<(String, Result<(), RelError>)>,
}

impl BundleReport {
    pub fn all_ok(&self) -> bool {
        self.combinators.iter().all(|(_, r)| r.is_ok())
            && self.beta_laws.iter().all(|(_, r)| matches!(r, Ok(EqResult::Equal(_))))
            && self.schema_laws.iter().all(|(_, r)| r.is_ok())
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (n, r) in &self.combinators {
            if let Err(e) = r {
                out.push(format!("combinator {n}: {e}"));
            }
        }
        for (n, r) in &self.beta_laws {
            match r {
                Ok(EqResult::Equal(_)) => {}
                Ok(EqResult::NotEqual(..)) => out.push(format!("law {n}: not equal")),
                Ok(EqResult::Unknown(u)) => out.push(format!("law {n}: unknown ({u:?})")),
                Err(e) => out.push(format!("law {n}: {e}")),
            }
        }
        for (n, r) in &self.schema_laws {
            if let Err(e) = r {
                out.push(format!("schema {n}: {e}"));
            }
        }
        out
    }
}

fn sugar() -> PrintOptions {
    PrintOptions { sugar: true }
}

impl EncodingBundle {
    fn new(name: &str, defined_type: Type, xi: Vec<String>) -> Self {
        EncodingBundle {
            name: name.to_string(),
            defined_type,
            xi,
            combinators: Vec::new(),
            beta_laws: Vec::new(),
            schema_laws: Vec::new(),
        }
    }

    fn add(&mut self, name: &str, term: Term, ty: Type) {
        self.combinators.push(Combinator {
            name: name.to_string(),
            term,
            ty,
        });
    }

    fn law(&mut self, name: &str, ctx: TermContext, lhs: Term, rhs: Term) {
        self.beta_laws.push(BetaLaw {
            name: name.to_string(),
            ctx,
            lhs,
            rhs,
        });
    }

    fn schema(&mut self, name: &str, prop: Prop) {
        self.schema_laws.push(SchemaLaw {
            name: name.to_string(),
            prop,
        });
    }

    pub fn combinator(&self, name: &str) -> Option<&Combinator> {
        self.combinators.iter().find(|c| c.name == name)
    }

    fn context(&self) -> TermContext {
        TermContext {
            xi: self.xi.clone(),
            ..TermContext::default()
        }
    }

    /// Replaces combinator names by their definitions.
    pub fn resolve<T: Syntax>(&self, t: &T) -> T {
        self.combinators.iter().fold(t.clone(), |acc, c| acc.subst_tm(&c.name, &c.term))
    }

    pub fn check_combinators(&self) -> Vec<(String, Result<(), TypeError>)> {
        let ctx = self.context();
        self.combinators
            .iter()
            .map(|c| (c.name.clone(), check(&ctx, &c.term, &c.ty).map(|_| ())))
            .collect()
    }

    pub fn check_beta_laws(&self, cfg: &RewriteConfig) -> Vec<(String, Result<EqResult, RewriteError>)> {
        self.beta_laws
            .iter()
            .map(|law| {
                let mut ctx = law.ctx.clone();
                ctx.xi.splice(0..0, self.xi.iter().cloned());
                let r = equal_typed(&ctx, &self.resolve(&law.lhs), &self.resolve(&law.rhs), cfg);
                (law.name.clone(), r)
            })
            .collect()
    }

    pub fn check_schema_laws(&self) -> Vec<(String, Result<(), RelError>)> {
        let ctx = RelContext::from_terms(self.context());
        self.schema_laws
            .iter()
            .map(|s| (s.name.clone(), check_prop(&ctx, &self.resolve(&s.prop))))
            .collect()
    }

    pub fn verify(&self, cfg: &RewriteConfig) -> BundleReport {
        BundleReport {
            combinators: self.check_combinators(),
            beta_laws: self.check_beta_laws(cfg),
            schema_laws: self.check_schema_laws(),
        }
    }

    /// The law's sides abstracted over its context, so that they can be
    /// compared as closed terms.
    pub fn closed_law(&self, law: &BetaLaw) -> (Term, Term) {
        let close = |t: &Term| {
            let body = law.ctx.delta.iter().chain(&law.ctx.gamma).rev().fold(t.clone(), |acc, (x, ty)| ilam(x, ty.clone(), acc));
            ty_lams(&law.ctx.xi, body)
        };
        (close(&law.lhs), close(&law.rhs))
    }

    /// The bundle as a source file: one declaration per combinator, one
    /// `#equal` per law, schema laws as comments.
    pub fn to_pilly(&self) -> Result<String, EncodingError> {
        if !self.xi.is_empty() {
            return Err(EncodingError::OpenBundle(self.name.clone()));
        }
        let mut out = format!("# {}\n# defined type: {}\n\n", self.name, print_type_with(&self.defined_type, sugar()));
        for c in &self.combinators {
            out.push_str(&format!(
                "term {} : {} =\n  {}\n\n",
                c.name,
                print_type_with(&c.ty, sugar()),
                print_term_with(&c.term, sugar())
            ));
        }
        for law in &self.beta_laws {
            let (lhs, rhs) = self.closed_law(law);
            out.push_str(&format!("# {}\n#equal {} == {}\n\n", law.name, print_term_with(&lhs, sugar()), print_term_with(&rhs, sugar())));
        }
        for s in &self.schema_laws {
            out.push_str(&format!("# schema {}: {}\n", s.name, print_prop_with(&s.prop, sugar())));
        }
        Ok(out)
    }
}

impl fmt::Display for EncodingBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} = {}", self.name, print_type_with(&self.defined_type, sugar()))?;
        for c in &self.combinators {
            writeln!(f, "  {} : {}", c.name, print_type_with(&c.ty, sugar()))?;
            writeln!(f, "    = {}", print_term_with(&c.term, sugar()))?;
        }
        for law in &self.beta_laws {
            writeln!(
                f,
                "  law {}: {} = {}",
                law.name,
                print_term_with(&law.lhs, sugar()),
                print_term_with(&law.rhs, sugar())
            )?;
        }
        for s in &self.schema_laws {
            writeln!(f, "  schema {}: {}", s.name, print_prop_with(&s.prop, sugar()))?;
        }
        Ok(())
    }
}
