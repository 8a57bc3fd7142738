//! Normal forms of relations and propositions: applications of
//! comprehensions are reduced and every term is normalized.

use pilly_core::fresh::fresh;
use pilly_core::{Binder, Prop, RelContext, Relation, Sort, Syntax, Term};
use pilly_rewrite::{normalize, RewriteConfig};

use crate::construct::{type_rel, TypedRel};
use crate::wf::relation_type;
use crate::RelError;

fn term(t: &Term) -> Term {
    normalize(t, &RewriteConfig::default()).map(|n| n.term).unwrap_or_else(|_| t.clone())
}

pub fn normalize_relation(r: &Relation) -> Relation {
    match r {
        Relation::Var(_) => r.clone(),
        Relation::Compr {
            left,
            dom,
            right,
            cod,
            body,
        } => Relation::Compr {
            left: left.clone(),
            dom: dom.clone(),
            right: right.clone(),
            cod: cod.clone(),
            body: Box::new(normalize_prop(body)),
        },
        Relation::TypeRel { params, body, args } => Relation::TypeRel {
            params: params.clone(),
            body: body.clone(),
            args: args.iter().map(normalize_relation).collect(),
        },
    }
}

pub fn normalize_prop(p: &Prop) -> Prop {
    match p {
        Prop::Eq(ty, a, b) => Prop::Eq(ty.clone(), term(a), term(b)),
        Prop::RelApp(r, a, b) => match normalize_relation(r) {
            Relation::Compr { body, .. } => normalize_prop(&body.instantiate_tm(&[a.clone(), b.clone()])),
            r => Prop::RelApp(r, term(a), term(b)),
        },
        Prop::Implies(a, b) => Prop::implies(normalize_prop(a), normalize_prop(b)),
        Prop::And(a, b) => Prop::and(normalize_prop(a), normalize_prop(b)),
        Prop::Or(a, b) => Prop::or(normalize_prop(a), normalize_prop(b)),
        Prop::Top | Prop::Bottom => p.clone(),
        Prop::Quant(q, binder, body) => Prop::Quant(*q, binder.clone(), Box::new(normalize_prop(body))),
    }
}

/// Replaces every relational interpretation of a type by its structural
/// unfolding, then normalizes.
pub fn unfold_prop(ctx: &RelContext, p: &Prop) -> Result<Prop, RelError> {
    Ok(normalize_prop(&unfold_in_prop(ctx, p)?))
}

pub fn unfold_relation(ctx: &RelContext, r: &Relation) -> Result<Relation, RelError> {
    Ok(normalize_relation(&unfold_in_rel(ctx, r)?))
}

fn unfold_in_prop(ctx: &RelContext, p: &Prop) -> Result<Prop, RelError> {
    Ok(match p {
        Prop::Eq(..) | Prop::Top | Prop::Bottom => p.clone(),
        Prop::RelApp(r, a, b) => Prop::RelApp(unfold_in_rel(ctx, r)?, a.clone(), b.clone()),
        Prop::Implies(a, b) => Prop::implies(unfold_in_prop(ctx, a)?, unfold_in_prop(ctx, b)?),
        Prop::And(a, b) => Prop::and(unfold_in_prop(ctx, a)?, unfold_in_prop(ctx, b)?),
        Prop::Or(a, b) => Prop::or(unfold_in_prop(ctx, a)?, unfold_in_prop(ctx, b)?),
        Prop::Quant(q, binder, body) => {
            let (sort, name, inner) = enter(ctx, binder);
            let names = [name];
            let body = unfold_in_prop(&inner, &body.open(sort, &names))?;
            Prop::Quant(*q, binder.clone(), Box::new(body.close(sort, &names)))
        }
    })
}

/// Opens a quantifier binder with a fresh name.
pub(crate) fn enter(ctx: &RelContext, binder: &Binder) -> (Sort, String, RelContext) {
    match binder {
        Binder::Ty(h) => {
            let a = fresh(h.as_str());
            (Sort::Ty, a.clone(), ctx.clone().with_ty_var(a))
        }
        Binder::Tm(h, ty) => {
            let x = fresh(h.as_str());
            (Sort::Tm, x.clone(), ctx.clone().with_term(x, ty.clone()))
        }
        Binder::Rel { hint, dom, cod, flavor } => {
            let r = fresh(hint.as_str());
            (Sort::Rel, r.clone(), ctx.clone().with_rel(r, dom.clone(), cod.clone(), *flavor))
        }
    }
}

fn unfold_in_rel(ctx: &RelContext, r: &Relation) -> Result<Relation, RelError> {
    Ok(match r {
        Relation::Var(_) => r.clone(),
        Relation::Compr {
            left,
            dom,
            right,
            cod,
            body,
        } => {
            let names = [fresh(left.as_str()), fresh(right.as_str())];
            let inner = ctx
                .clone()
                .with_term(names[0].clone(), dom.clone())
                .with_term(names[1].clone(), cod.clone());
            let body = unfold_in_prop(&inner, &body.open(Sort::Tm, &names))?;
            Relation::Compr {
                left: left.clone(),
                dom: dom.clone(),
                right: right.clone(),
                cod: cod.clone(),
                body: Box::new(body.close(Sort::Tm, &names)),
            }
        }
        Relation::TypeRel { params, body, args } => {
            let mut typed = Vec::new();
            for a in args {
                let (dom, cod) = relation_type(ctx, a)?;
                typed.push(TypedRel::new(unfold_in_rel(ctx, a)?, dom, cod));
            }
            let names: Vec<String> = params.iter().map(|h| fresh(h.as_str())).collect();
            type_rel(&names, &body.open(Sort::Ty, &names), &typed)?.rel
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use pilly_core::build::{compr, rel_var, var};
    use pilly_core::Type;

    #[test]
    fn comprehension_application_reduces() {
        let r = compr("x", Type::Unit, "y", Type::Unit, Prop::RelApp(rel_var("R"), var("y"), var("x")));
        let p = Prop::RelApp(r, Term::var("u"), Term::var("v"));
        assert_eq!(normalize_prop(&p), Prop::RelApp(rel_var("R"), Term::var("v"), Term::var("u")));
    }

    #[test]
    fn terms_inside_are_normalized() {
        let redex = Term::app(pilly_core::build::id(Type::Unit), Term::Star);
        let p = Prop::Eq(Type::Unit, redex, Term::Star);
        assert_eq!(normalize_prop(&p), Prop::Eq(Type::Unit, Term::Star, Term::Star));
    }
}
