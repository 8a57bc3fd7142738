use pilly_core::build::{compose, foralls, id, ilam, lam, let_bang, let_tensor, ty_lams, var};
use pilly_core::fresh::{fresh, surface};
use pilly_core::{print_type, Sort, Syntax, Term, TermContext, Type};
use pilly_rewrite::{equal_typed, EqResult, RewriteConfig};

use crate::polarity::{mentions, polarity};
use crate::FunctorError;

/// A term together with the function type it inhabits.
#[derive(Clone, Debug)]
pub struct Arrow {
    pub term: Term,
    pub dom: Type,
    pub cod: Type,
}

impl Arrow {
    pub fn identity(ty: Type) -> Arrow {
        Arrow {
            term: id(ty.clone()),
            dom: ty.clone(),
            cod: ty,
        }
    }

    pub fn named(name: &str, dom: Type, cod: Type) -> Arrow {
        Arrow {
            term: var(name),
            dom,
            cod,
        }
    }
}

/// Instantiation of the negative and positive variable on both sides of
/// the map being built, and the maps lifted through it.
struct Roles<'a> {
    neg: &'a str,
    pos: &'a str,
    src: (Type, Type),
    dst: (Type, Type),
    /// From `dst.0` to `src.0`.
    f: Term,
    /// From `src.1` to `dst.1`.
    g: Term,
}

impl Roles<'_> {
    fn at(&self, ty: &Type, args: &(Type, Type)) -> Type {
        ty.subst_tys(&[self.neg.to_string(), self.pos.to_string()], &[args.0.clone(), args.1.clone()])
    }

    fn swapped(&self) -> Roles<'_> {
        Roles {
            neg: self.pos,
            pos: self.neg,
            src: (self.dst.1.clone(), self.dst.0.clone()),
            dst: (self.src.1.clone(), self.src.0.clone()),
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }
}

fn check_input(ty: &Type, neg: &str, pos: &str) -> Result<(), FunctorError> {
    if !ty.dangling(Sort::Ty).is_empty() {
        return Err(FunctorError::NotInductivelyConstructed(print_type(ty)));
    }
    if polarity(ty, neg).positive {
        return Err(FunctorError::PolarityViolation {
            var: surface(neg).to_string(),
            found: "positively",
            ty: print_type(ty),
        });
    }
    if polarity(ty, pos).negative {
        return Err(FunctorError::PolarityViolation {
            var: surface(pos).to_string(),
            found: "negatively",
            ty: print_type(ty),
        });
    }
    Ok(())
}

fn primed(name: &str) -> String {
    fresh(&format!("{}'", surface(name)))
}

/// `all a b a' b'. (a' -o a) -> (b -o b') -> s(a, b) -o s(a', b')` for a
/// type `s` in which `neg` occurs only negatively and `pos` only positively.
pub fn action_type(ty: &Type, neg: &str, pos: &str) -> Type {
    let (a2, b2) = (primed(neg), primed(pos));
    action_type_with(ty, neg, pos, &a2, &b2)
}

fn action_type_with(ty: &Type, neg: &str, pos: &str, a2: &str, b2: &str) -> Type {
    let (a, b) = (Type::var(neg), Type::var(pos));
    let target = ty.subst_tys(&[neg.to_string(), pos.to_string()], &[Type::var(a2), Type::var(b2)]);
    let body = Type::arrow(
        Type::lolli(Type::var(a2), a),
        Type::arrow(Type::lolli(b, Type::var(b2)), Type::lolli(ty.clone(), target)),
    );
    foralls(&[neg.to_string(), pos.to_string(), a2.to_string(), b2.to_string()], body)
}

/// The term lifting maps through `ty`, closed over `neg` and `pos`. Other
/// free type variables and closed types act as identities.
pub fn synthesize_m(ty: &Type, neg: &str, pos: &str) -> Result<Term, FunctorError> {
    check_input(ty, neg, pos)?;
    let (a2, b2) = (primed(neg), primed(pos));
    let (f, g) = (fresh("f"), fresh("g"));
    let roles = Roles {
        neg,
        pos,
        src: (Type::var(neg), Type::var(pos)),
        dst: (Type::var(&a2), Type::var(&b2)),
        f: var(&f),
        g: var(&g),
    };
    let body = lift(ty, &roles);
    let inner = ilam(
        &f,
        Type::lolli(Type::var(&a2), Type::var(neg)),
        ilam(&g, Type::lolli(Type::var(pos), Type::var(&b2)), body),
    );
    Ok(ty_lams(&[neg.to_string(), pos.to_string(), a2, b2], inner))
}

fn lift(ty: &Type, r: &Roles<'_>) -> Term {
    let src = r.at(ty, &r.src);
    if !mentions(ty, r.neg) && !mentions(ty, r.pos) {
        return id(src);
    }
    match ty {
        Type::Var(_) => r.g.clone(),
        Type::Lolli(d, c) => {
            let (h, x) = (fresh("h"), fresh("x"));
            let back = lift(d, &r.swapped());
            let inner = Term::app(lift(c, r), Term::app(var(&h), Term::app(back, var(&x))));
            lam(&h, src, lam(&x, r.at(d, &r.dst), inner))
        }
        Type::Tensor(a, b) => {
            let (z, x, y) = (fresh("z"), fresh("x"), fresh("y"));
            let annot = Some((r.at(a, &r.src), r.at(b, &r.src)));
            let body = Term::pair(Term::app(lift(a, r), var(&x)), Term::app(lift(b, r), var(&y)));
            lam(&z, src, let_tensor(&x, &y, annot, var(&z), body))
        }
        Type::Bang(a) => {
            let (z, y) = (fresh("z"), fresh("y"));
            let body = Term::bang(Term::app(lift(a, r), var(&y)));
            lam(&z, src, let_bang(&y, Some(r.at(a, &r.src)), var(&z), body))
        }
        Type::Forall(h, body) => {
            let z = fresh("z");
            let w = fresh(h.as_str());
            let opened = body.open(Sort::Ty, std::slice::from_ref(&w));
            let inner = Term::app(lift(&opened, r), Term::ty_app(var(&z), Type::var(&w)));
            lam(&z, src, pilly_core::build::ty_lam(&w, inner))
        }
        Type::Unit => id(src),
    }
}

/// `M [a] [b] [a'] [b'] !f !g` for `f : a' -o a` and `g : b -o b'`, a map
/// `ty(a, b) -o ty(a', b')`.
pub fn apply_action(ty: &Type, neg: &str, pos: &str, f: &Arrow, g: &Arrow) -> Result<Term, FunctorError> {
    let m = synthesize_m(ty, neg, pos)?;
    let inst = Term::ty_apps(m, [f.cod.clone(), g.dom.clone(), f.dom.clone(), g.cod.clone()]);
    Ok(Term::apps(inst, [Term::bang(f.term.clone()), Term::bang(g.term.clone())]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorLaws {
    pub identity: EqResult,
    pub composition: EqResult,
}

/// Runs the equality engine on `ty(id, id) = id` and on
/// `ty(f . f', g' . g) = ty(f', g') . ty(f, g)`.
pub fn check_functor_laws(ty: &Type, neg: &str, pos: &str, cfg: &RewriteConfig) -> Result<FunctorLaws, FunctorError> {
    check_input(ty, neg, pos)?;
    let mut xi: Vec<String> = ty.free_names(Sort::Ty).into_iter().collect();
    for v in [neg, pos] {
        if !xi.iter().any(|x| x == v) {
            xi.push(v.to_string());
        }
    }
    let base = TermContext {
        xi: xi.clone(),
        ..TermContext::default()
    };
    let (a, b) = (Type::var(neg), Type::var(pos));
    let lhs = apply_action(ty, neg, pos, &Arrow::identity(a.clone()), &Arrow::identity(b.clone()))?;
    let identity = equal_typed(&base, &lhs, &id(ty.clone()), cfg)?;

    let (a1, a2, b1, b2) = (primed(neg), primed(neg), primed(pos), primed(pos));
    let (f, f1, g, g1) = (fresh("f"), fresh("f'"), fresh("g"), fresh("g'"));
    let tv = Type::var;
    let mut ctx = base;
    ctx.xi.extend([a1.clone(), a2.clone(), b1.clone(), b2.clone()]);
    ctx.gamma = vec![
        (f.clone(), Type::lolli(tv(&a1), a.clone())),
        (f1.clone(), Type::lolli(tv(&a2), tv(&a1))),
        (g.clone(), Type::lolli(b.clone(), tv(&b1))),
        (g1.clone(), Type::lolli(tv(&b1), tv(&b2))),
    ];
    let ff = Arrow {
        term: compose(var(&f), var(&f1), tv(&a2)),
        dom: tv(&a2),
        cod: a.clone(),
    };
    let gg = Arrow {
        term: compose(var(&g1), var(&g), b.clone()),
        dom: b.clone(),
        cod: tv(&b2),
    };
    let lhs = apply_action(ty, neg, pos, &ff, &gg)?;
    let first = apply_action(
        ty,
        neg,
        pos,
        &Arrow::named(&f, tv(&a1), a.clone()),
        &Arrow::named(&g, b.clone(), tv(&b1)),
    )?;
    let second = apply_action(
        ty,
        neg,
        pos,
        &Arrow::named(&f1, tv(&a2), tv(&a1)),
        &Arrow::named(&g1, tv(&b1), tv(&b2)),
    )?;
    let rhs = compose(second, first, ty.clone());
    let composition = equal_typed(&ctx, &lhs, &rhs, cfg)?;
    Ok(FunctorLaws { identity, composition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use pilly_typecheck::check;

    #[test]
    fn base_case_is_the_second_map() {
        let m = synthesize_m(&Type::var("b"), "a", "b").unwrap();
        let ty = action_type(&Type::var("b"), "a", "b");
        check(&TermContext::new(), &m, &ty).unwrap();
    }

    #[test]
    fn wrong_variance_is_rejected() {
        let err = synthesize_m(&Type::lolli(Type::var("b"), Type::Unit), "a", "b").unwrap_err();
        assert!(matches!(err, FunctorError::PolarityViolation { found: "negatively", .. }));
    }
}
