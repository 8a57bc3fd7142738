//! Formation checks for relations and propositions.

use pilly_core::fresh::fresh;
use pilly_core::{print_type, Prop, RelContext, Relation, Sort, Syntax, Term, Type, Var};
use pilly_typecheck::{infer, kind_check};

use crate::normal::enter;
use crate::RelError;

fn term_type(ctx: &RelContext, t: &Term) -> Result<Type, RelError> {
    Ok(infer(&ctx.terms.promote_linear(), t)?.ty)
}

fn expect(what: &str, expected: &Type, found: &Type) -> Result<(), RelError> {
    if expected != found {
        return Err(RelError::Mismatch {
            what: what.to_string(),
            expected: print_type(expected),
            found: print_type(found),
        });
    }
    Ok(())
}

/// Domain and codomain of a well-formed relation.
pub fn relation_type(ctx: &RelContext, r: &Relation) -> Result<(Type, Type), RelError> {
    match r {
        Relation::Var(Var::Free(n)) => ctx
            .lookup_rel(n)
            .map(|e| (e.dom.clone(), e.cod.clone()))
            .ok_or_else(|| RelError::UnboundRelation(pilly_core::fresh::surface(n).to_string())),
        Relation::Var(Var::Bound(i)) => Err(RelError::Ill(format!("dangling relation index {i}"))),
        Relation::Compr {
            left,
            dom,
            right,
            cod,
            body,
        } => {
            kind_check(&ctx.terms.xi, dom)?;
            kind_check(&ctx.terms.xi, cod)?;
            let names = [fresh(left.as_str()), fresh(right.as_str())];
            let inner = ctx
                .clone()
                .with_term(names[0].clone(), dom.clone())
                .with_term(names[1].clone(), cod.clone());
            check_prop(&inner, &body.open(Sort::Tm, &names))?;
            Ok((dom.clone(), cod.clone()))
        }
        Relation::TypeRel { params, body, args } => {
            if params.len() != args.len() {
                return Err(RelError::Arity {
                    expected: params.len(),
                    found: args.len(),
                });
            }
            let names: Vec<String> = params.iter().map(|h| fresh(h.as_str())).collect();
            let opened = body.open(Sort::Ty, &names);
            kind_check(&names, &opened)?;
            let mut doms = Vec::new();
            let mut cods = Vec::new();
            for a in args {
                let (d, c) = relation_type(ctx, a)?;
                doms.push(d);
                cods.push(c);
            }
            Ok((opened.subst_tys(&names, &doms), opened.subst_tys(&names, &cods)))
        }
    }
}

pub fn check_relation(ctx: &RelContext, r: &Relation) -> Result<(), RelError> {
    relation_type(ctx, r).map(|_| ())
}

pub fn check_prop(ctx: &RelContext, p: &Prop) -> Result<(), RelError> {
    match p {
        Prop::Eq(ty, a, b) => {
            kind_check(&ctx.terms.xi, ty)?;
            expect("left side of equation", ty, &term_type(ctx, a)?)?;
            expect("right side of equation", ty, &term_type(ctx, b)?)
        }
        Prop::RelApp(r, a, b) => {
            let (dom, cod) = relation_type(ctx, r)?;
            expect("first related term", &dom, &term_type(ctx, a)?)?;
            expect("second related term", &cod, &term_type(ctx, b)?)
        }
        Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
            check_prop(ctx, a)?;
            check_prop(ctx, b)
        }
        Prop::Top | Prop::Bottom => Ok(()),
        Prop::Quant(_, binder, body) => {
            if let pilly_core::Binder::Tm(_, ty) = binder {
                kind_check(&ctx.terms.xi, ty)?;
            }
            if let pilly_core::Binder::Rel { dom, cod, .. } = binder {
                kind_check(&ctx.terms.xi, dom)?;
                kind_check(&ctx.terms.xi, cod)?;
            }
            let (sort, name, inner) = enter(ctx, binder);
            check_prop(&inner, &body.open(sort, &[name]))
        }
    }
}

/// Checks that the relational context itself is well formed.
pub fn check_context(ctx: &RelContext) -> Result<(), RelError> {
    pilly_typecheck::check_context(&ctx.terms)?;
    let mut seen = std::collections::BTreeSet::new();
    for e in &ctx.entries {
        if !seen.insert(e.name.as_str()) {
            return Err(RelError::Ill(format!("relation variable `{}` is bound twice", e.name)));
        }
        kind_check(&ctx.terms.xi, &e.dom)?;
        kind_check(&ctx.terms.xi, &e.cod)?;
    }
    Ok(())
}
