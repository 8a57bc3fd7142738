//! Type inference for linear terms.
//!
//! Inference threads the linear context and returns, with the type, the set
//! of linear variables the term consumed. Multiplicative rules demand that
//! the two halves consume disjoint sets; binders check that the variable
//! they introduce was consumed.
//!
//! Binders are never opened: the environment keeps a stack of names for
//! the bound indices of each sort, so each node is visited once.

use std::collections::BTreeSet;

use pilly_core::fresh::{fresh, surface};
use pilly_core::{print_type, Sort, Syntax, Term, TermContext, Type, Var};

use crate::error::TypeError;

/// Result of a successful inference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Typing {
    pub ty: Type,
    /// The linear variables of the context, all consumed exactly once.
    pub consumed: Vec<String>,
    /// The input term with every let annotation filled in.
    pub elaborated: Term,
}

/// `Ξ ⊢ σ`: every free type variable is in `xi` and no index dangles.
/// An out-of-scope variable is reported as unbound.
pub fn kind_check(xi: &[String], ty: &Type) -> Result<(), TypeError> {
    if let Some(i) = ty.dangling(Sort::Ty).into_iter().next() {
        return Err(TypeError::IllKinded {
            ty: print_type(ty),
            reason: format!("dangling index {i}"),
        });
    }
    for name in ty.free_names(Sort::Ty) {
        if !xi.contains(&name) {
            return Err(TypeError::UnboundVariable(surface(&name).to_string()));
        }
    }
    Ok(())
}

/// Checks that names are distinct and every listed type is well kinded.
pub fn check_context(ctx: &TermContext) -> Result<(), TypeError> {
    let mut seen = BTreeSet::new();
    for a in &ctx.xi {
        if !seen.insert(a.as_str()) {
            return Err(TypeError::ContextIllFormed(format!(
                "type variable `{a}` is bound twice"
            )));
        }
    }
    let mut seen = BTreeSet::new();
    for (x, t) in ctx.gamma.iter().chain(&ctx.delta) {
        if !seen.insert(x.as_str()) {
            return Err(TypeError::ContextIllFormed(format!("variable `{x}` is bound twice")));
        }
        kind_check(&ctx.xi, t)?;
    }
    Ok(())
}

/// Infers the type of `term` in `ctx`. Every linear variable of the context
/// must be consumed exactly once.
pub fn infer(ctx: &TermContext, term: &Term) -> Result<Typing, TypeError> {
    check_context(ctx)?;
    let mut env = Env {
        xi: ctx.xi.clone(),
        gamma: ctx.gamma.clone(),
        delta: ctx.delta.clone(),
        tm_names: Vec::new(),
        ty_names: Vec::new(),
    };
    let (ty, used, elaborated) = env.infer(term)?;
    for (x, _) in &ctx.delta {
        if !used.contains(x) {
            return Err(TypeError::unused(x));
        }
    }
    Ok(Typing {
        ty,
        consumed: ctx.delta.iter().map(|(x, _)| x.clone()).collect(),
        elaborated,
    })
}

/// Checks `term` against a claimed type up to α-equivalence.
pub fn check(ctx: &TermContext, term: &Term, claim: &Type) -> Result<Typing, TypeError> {
    kind_check(&ctx.xi, claim)?;
    let typing = infer(ctx, term)?;
    if &typing.ty != claim {
        return Err(TypeError::mismatch(claim.clone(), typing.ty));
    }
    Ok(typing)
}

/// The closed-context type of a term.
pub fn type_of(term: &Term) -> Result<Type, TypeError> {
    infer(&TermContext::new(), term).map(|t| t.ty)
}

/// Fills in every let annotation.
pub fn elaborate(ctx: &TermContext, term: &Term) -> Result<Term, TypeError> {
    infer(ctx, term).map(|t| t.elaborated)
}

type Used = BTreeSet<String>;

struct Env {
    xi: Vec<String>,
    gamma: Vec<(String, Type)>,
    delta: Vec<(String, Type)>,
    /// Names of the enclosing term binders, innermost last.
    tm_names: Vec<String>,
    /// Names of the enclosing type binders, innermost last.
    ty_names: Vec<String>,
}

fn join(a: Used, b: Used) -> Result<Used, TypeError> {
    if let Some(x) = a.intersection(&b).next() {
        return Err(TypeError::reused(x));
    }
    let mut a = a;
    a.extend(b);
    Ok(a)
}

const STACK_RED_ZONE: usize = 1024 * 1024;
const STACK_GROWTH: usize = 16 * 1024 * 1024;

fn lookup<'a>(entries: &'a [(String, Type)], name: &str) -> Option<&'a Type> {
    entries.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
}

impl Env {
    fn infer(&mut self, term: &Term) -> Result<(Type, Used, Term), TypeError> {
        stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || self.infer_node(term))
    }

    /// A type written under the current binders, with its indices named.
    fn named(&self, ty: &Type) -> Result<Type, TypeError> {
        let ty = if self.ty_names.is_empty() {
            ty.clone()
        } else {
            ty.open(Sort::Ty, &self.ty_names)
        };
        kind_check(&self.xi, &ty)?;
        Ok(ty)
    }

    /// The inverse of [`Env::named`], for annotations in the elaborated term.
    fn indexed(&self, ty: Type) -> Type {
        if self.ty_names.is_empty() {
            ty
        } else {
            ty.close(Sort::Ty, &self.ty_names)
        }
    }

    fn lookup_var(&self, x: &str) -> Result<(Type, Used), TypeError> {
        if let Some(t) = lookup(&self.delta, x) {
            Ok((t.clone(), BTreeSet::from([x.to_string()])))
        } else if let Some(t) = lookup(&self.gamma, x) {
            Ok((t.clone(), Used::new()))
        } else {
            Err(TypeError::UnboundVariable(surface(x).to_string()))
        }
    }

    /// Infers `body` under fresh term binders named after their hints; the
    /// binders enter the linear context unless `intuitionistic`.
    fn under(
        &mut self,
        binders: &[(&str, Type)],
        intuitionistic: bool,
        body: &Term,
    ) -> Result<(Type, Used, Term, Vec<String>), TypeError> {
        let names: Vec<String> = binders.iter().map(|(h, _)| fresh(h)).collect();
        let ctx = if intuitionistic { &mut self.gamma } else { &mut self.delta };
        for (x, (_, t)) in names.iter().zip(binders) {
            ctx.push((x.clone(), t.clone()));
        }
        self.tm_names.extend(names.iter().cloned());
        let res = self.infer(body);
        self.tm_names.truncate(self.tm_names.len() - names.len());
        let ctx = if intuitionistic { &mut self.gamma } else { &mut self.delta };
        ctx.truncate(ctx.len() - names.len());
        let (ty, used, body) = res?;
        Ok((ty, used, body, names))
    }

    fn infer_node(&mut self, term: &Term) -> Result<(Type, Used, Term), TypeError> {
        match term {
            Term::Var(Var::Free(x)) => {
                let (t, used) = self.lookup_var(x)?;
                Ok((t, used, term.clone()))
            }
            Term::Var(Var::Bound(i)) => match self.tm_names.len().checked_sub(i + 1) {
                Some(k) => {
                    let (t, used) = self.lookup_var(&self.tm_names[k])?;
                    Ok((t, used, term.clone()))
                }
                None => Err(TypeError::UnboundVariable(format!("#{i}"))),
            },
            Term::Star => Ok((Type::Unit, Used::new(), Term::Star)),
            Term::Y => Ok((pilly_core::y_type(), Used::new(), Term::Y)),
            Term::Lam { hint, ty, body } => {
                let dom = self.named(ty)?;
                let (cod, mut used, body, names) = self.under(&[(hint.as_str(), dom.clone())], false, body)?;
                if !used.remove(&names[0]) {
                    return Err(TypeError::unused(&names[0]));
                }
                let elab = Term::Lam {
                    hint: hint.clone(),
                    ty: ty.clone(),
                    body: Box::new(body),
                };
                Ok((Type::lolli(dom, cod), used, elab))
            }
            Term::App(f, a) => {
                let (ft, u1, f) = self.infer(f)?;
                let (at, u2, a) = self.infer(a)?;
                let used = join(u1, u2)?;
                match ft {
                    Type::Lolli(dom, cod) => {
                        if *dom != at {
                            return Err(TypeError::mismatch(*dom, at));
                        }
                        Ok((*cod, used, Term::app(f, a)))
                    }
                    other => Err(TypeError::NotAFunction(other)),
                }
            }
            Term::Pair(l, r) => {
                let (lt, u1, l) = self.infer(l)?;
                let (rt, u2, r) = self.infer(r)?;
                Ok((Type::tensor(lt, rt), join(u1, u2)?, Term::pair(l, r)))
            }
            Term::Bang(t) => {
                let (ty, used, t) = self.infer(t)?;
                if let Some(x) = used.into_iter().next() {
                    return Err(TypeError::LinearInBangBody(surface(&x).to_string()));
                }
                Ok((Type::bang(ty), Used::new(), Term::bang(t)))
            }
            Term::TyLam { hint, body } => {
                let a = fresh(hint.as_str());
                self.xi.push(a.clone());
                self.ty_names.push(a.clone());
                let res = self.infer(body);
                self.ty_names.pop();
                self.xi.pop();
                let (ty, used, body) = res?;
                let elab = Term::TyLam {
                    hint: hint.clone(),
                    body: Box::new(body),
                };
                Ok((Type::Forall(hint.clone(), Box::new(ty.close(Sort::Ty, &[a]))), used, elab))
            }
            Term::TyApp(t, arg) => {
                let named = self.named(arg)?;
                let (ty, used, t) = self.infer(t)?;
                match ty {
                    Type::Forall(_, body) => Ok((body.instantiate(&named), used, Term::ty_app(t, arg.clone()))),
                    other => Err(TypeError::NotAForall(other)),
                }
            }
            Term::LetStar { scrut, body } => {
                let (st, u1, scrut) = self.infer(scrut)?;
                if st != Type::Unit {
                    return Err(TypeError::mismatch(Type::Unit, st));
                }
                let (bt, u2, body) = self.infer(body)?;
                let elab = Term::LetStar {
                    scrut: Box::new(scrut),
                    body: Box::new(body),
                };
                Ok((bt, join(u1, u2)?, elab))
            }
            Term::LetTensor {
                left,
                right,
                annot,
                scrut,
                body,
            } => {
                let (st, u1, scrut) = self.infer(scrut)?;
                let (a, b) = match st {
                    Type::Tensor(a, b) => (*a, *b),
                    other => return Err(TypeError::shape("a tensor type", other)),
                };
                if let Some((ea, eb)) = annot {
                    let (ea, eb) = (self.named(ea)?, self.named(eb)?);
                    if (&ea, &eb) != (&a, &b) {
                        return Err(TypeError::mismatch(Type::tensor(ea, eb), Type::tensor(a, b)));
                    }
                }
                let binders = [(left.as_str(), a.clone()), (right.as_str(), b.clone())];
                let (bt, mut u2, body, names) = self.under(&binders, false, body)?;
                for v in &names {
                    if !u2.remove(v) {
                        return Err(TypeError::unused(v));
                    }
                }
                let elab = Term::LetTensor {
                    left: left.clone(),
                    right: right.clone(),
                    annot: Some((self.indexed(a), self.indexed(b))),
                    scrut: Box::new(scrut),
                    body: Box::new(body),
                };
                Ok((bt, join(u1, u2)?, elab))
            }
            Term::LetBang {
                hint,
                annot,
                scrut,
                body,
            } => {
                let (st, u1, scrut) = self.infer(scrut)?;
                let a = match st {
                    Type::Bang(a) => *a,
                    other => return Err(TypeError::shape("a `!` type", other)),
                };
                if let Some(ea) = annot {
                    let ea = self.named(ea)?;
                    if ea != a {
                        return Err(TypeError::mismatch(ea, a));
                    }
                }
                let (bt, u2, body, _) = self.under(&[(hint.as_str(), a.clone())], true, body)?;
                let elab = Term::LetBang {
                    hint: hint.clone(),
                    annot: Some(self.indexed(a)),
                    scrut: Box::new(scrut),
                    body: Box::new(body),
                };
                Ok((bt, join(u1, u2)?, elab))
            }
        }
    }
}
