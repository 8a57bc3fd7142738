//! Executable instances of the three substitution lemmas.

use pilly_core::{print_term, print_type, Syntax, Term, TermContext, Type};
use thiserror::Error;

use crate::check::{infer, kind_check};
use crate::error::TypeError;

/// The substitution to apply to a typed term.
#[derive(Clone, Copy, Debug)]
pub enum Substitution<'a> {
    /// Replace the linear variable `var` by `arg`, which is typed in the
    /// ambient non-linear context extended with `arg_linear`.
    Linear {
        var: &'a str,
        arg: &'a Term,
        arg_linear: &'a [(String, Type)],
    },
    /// Replace the intuitionistic variable `var` by a term that uses no
    /// linear variables and does not mention `var`.
    Intuitionistic { var: &'a str, arg: &'a Term },
    /// Replace the type variable `var` by `arg`.
    Type { var: &'a str, arg: &'a Type },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("premise does not hold: {0}")]
    Premise(TypeError),
    #[error("substituted term `{term}` does not typecheck: {error}")]
    Conclusion { term: String, error: TypeError },
    #[error("substituted term has type `{found}`, expected `{expected}`")]
    TypeChanged { expected: String, found: String },
}

/// Checks the premises of the chosen lemma, performs the substitution and
/// checks that the result has the predicted type in the predicted context.
/// Returns the substituted term.
pub fn check_substitution_lemma(
    ctx: &TermContext,
    term: &Term,
    subst: Substitution<'_>,
) -> Result<Term, LemmaError> {
    let before = infer(ctx, term).map_err(LemmaError::Premise)?.ty;
    let (after_ctx, result, expected) = match subst {
        Substitution::Linear {
            var,
            arg,
            arg_linear,
        } => {
            let Some(sigma) = ctx.lookup_delta(var) else {
                return Err(LemmaError::Premise(TypeError::UnboundVariable(var.into())));
            };
            let arg_ctx = TermContext {
                xi: ctx.xi.clone(),
                gamma: ctx.gamma.clone(),
                delta: arg_linear.to_vec(),
            };
            expect_type(&arg_ctx, arg, sigma)?;
            let mut delta: Vec<_> = ctx.delta.iter().filter(|(n, _)| n != var).cloned().collect();
            delta.extend(arg_linear.iter().cloned());
            let after = TermContext {
                xi: ctx.xi.clone(),
                gamma: ctx.gamma.clone(),
                delta,
            };
            (after, term.subst_tm(var, arg), before)
        }
        Substitution::Intuitionistic { var, arg } => {
            let Some(sigma) = ctx.lookup_gamma(var) else {
                return Err(LemmaError::Premise(TypeError::UnboundVariable(var.into())));
            };
            let gamma: Vec<_> = ctx.gamma.iter().filter(|(n, _)| n != var).cloned().collect();
            let arg_ctx = TermContext {
                xi: ctx.xi.clone(),
                gamma: gamma.clone(),
                delta: Vec::new(),
            };
            expect_type(&arg_ctx, arg, sigma)?;
            let after = TermContext {
                xi: ctx.xi.clone(),
                gamma,
                delta: ctx.delta.clone(),
            };
            (after, term.subst_tm(var, arg), before)
        }
        Substitution::Type { var, arg } => {
            if !ctx.has_ty_var(var) {
                return Err(LemmaError::Premise(TypeError::UnboundVariable(var.into())));
            }
            let xi: Vec<String> = ctx.xi.iter().filter(|a| *a != var).cloned().collect();
            kind_check(&xi, arg).map_err(LemmaError::Premise)?;
            let on = |entries: &[(String, Type)]| -> Vec<(String, Type)> {
                entries
                    .iter()
                    .map(|(n, t)| (n.clone(), t.subst_ty(var, arg)))
                    .collect()
            };
            let after = TermContext {
                xi,
                gamma: on(&ctx.gamma),
                delta: on(&ctx.delta),
            };
            (after, term.subst_ty(var, arg), before.subst_ty(var, arg))
        }
    };
    let found = infer(&after_ctx, &result)
        .map_err(|error| LemmaError::Conclusion {
            term: print_term(&result),
            error,
        })?
        .ty;
    if found != expected {
        return Err(LemmaError::TypeChanged {
            expected: print_type(&expected),
            found: print_type(&found),
        });
    }
    Ok(result)
}

fn expect_type(ctx: &TermContext, term: &Term, ty: &Type) -> Result<(), LemmaError> {
    let found = infer(ctx, term).map_err(LemmaError::Premise)?.ty;
    if &found != ty {
        return Err(LemmaError::Premise(TypeError::TypeMismatch {
            expected: crate::error::Expected::Type(ty.clone()),
            found,
        }));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pilly_core::build::{id, var};

    #[test]
    fn linear_instance() {
        let ctx = TermContext::new().with_linear("x", Type::Unit);
        let arg = Term::app(id(Type::Unit), var("z"));
        let out = check_substitution_lemma(
            &ctx,
            &Term::pair(var("x"), Term::Star),
            Substitution::Linear {
                var: "x",
                arg: &arg,
                arg_linear: &[("z".into(), Type::Unit)],
            },
        )
        .unwrap();
        assert_eq!(out, Term::pair(arg, Term::Star));
    }

    #[test]
    fn type_instance() {
        let ctx = TermContext::new()
            .with_ty_var("a")
            .with_linear("x", Type::var("a"));
        let sigma = Type::lolli(Type::Unit, Type::Unit);
        check_substitution_lemma(&ctx, &var("x"), Substitution::Type { var: "a", arg: &sigma }).unwrap();
    }

    #[test]
    fn intuitionistic_argument_must_be_linear_free() {
        let ctx = TermContext::new().with_intuitionistic("x", Type::Unit);
        let err = check_substitution_lemma(
            &ctx,
            &Term::pair(var("x"), var("x")),
            Substitution::Intuitionistic { var: "x", arg: &var("w") },
        );
        assert!(matches!(err, Err(LemmaError::Premise(_))));
    }
}
