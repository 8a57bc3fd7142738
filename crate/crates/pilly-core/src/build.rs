//! Named constructors: build with free names, close on the way out.

use crate::fresh::fresh;
use crate::subst::{Sort, Syntax};
use crate::syntax::{Binder, Flavor, Hint, Prop, Quantifier, Relation, Term, Type, Var};

fn names(n: &str) -> [String; 1] {
    [n.to_string()]
}

pub fn ty_var(name: &str) -> Type {
    Type::var(name)
}

pub fn forall(name: &str, body: Type) -> Type {
    Type::Forall(Hint::new(name), Box::new(body.close(Sort::Ty, &names(name))))
}

pub fn foralls(vars: &[String], body: Type) -> Type {
    vars.iter().rev().fold(body, |acc, v| forall(v, acc))
}

pub fn var(name: &str) -> Term {
    Term::var(name)
}

/// `fn x:ty. body`.
pub fn lam(name: &str, ty: Type, body: Term) -> Term {
    Term::Lam {
        hint: Hint::new(name),
        ty,
        body: Box::new(body.close(Sort::Tm, &names(name))),
    }
}

/// `lam x:ty. body`, i.e. `fn y:!ty. let !x : ty = y in body`.
pub fn ilam(name: &str, ty: Type, body: Term) -> Term {
    let outer = fresh("y");
    lam(
        &outer,
        Type::bang(ty.clone()),
        let_bang(name, Some(ty), var(&outer), body),
    )
}

pub fn ty_lam(name: &str, body: Term) -> Term {
    Term::TyLam {
        hint: Hint::new(name),
        body: Box::new(body.close(Sort::Ty, &names(name))),
    }
}

pub fn ty_lams(vars: &[String], body: Term) -> Term {
    vars.iter().rev().fold(body, |acc, v| ty_lam(v, acc))
}

pub fn let_star(scrut: Term, body: Term) -> Term {
    Term::LetStar {
        scrut: Box::new(scrut),
        body: Box::new(body),
    }
}

pub fn let_tensor(x: &str, y: &str, annot: Option<(Type, Type)>, scrut: Term, body: Term) -> Term {
    Term::LetTensor {
        left: Hint::new(x),
        right: Hint::new(y),
        annot,
        scrut: Box::new(scrut),
        body: Box::new(body.close(Sort::Tm, &[x.to_string(), y.to_string()])),
    }
}

pub fn let_bang(x: &str, annot: Option<Type>, scrut: Term, body: Term) -> Term {
    Term::LetBang {
        hint: Hint::new(x),
        annot,
        scrut: Box::new(scrut),
        body: Box::new(body.close(Sort::Tm, &names(x))),
    }
}

/// `fn x:ty. x`.
pub fn id(ty: Type) -> Term {
    let x = fresh("x");
    lam(&x, ty, var(&x))
}

/// `fn x:dom. f (g x)`.
pub fn compose(f: Term, g: Term, dom: Type) -> Term {
    let x = fresh("x");
    lam(&x, dom, Term::app(f, Term::app(g, var(&x))))
}

pub fn quant(q: Quantifier, binder: Binder, name: &str, body: Prop) -> Prop {
    let sort = match binder {
        Binder::Ty(_) => Sort::Ty,
        Binder::Tm(..) => Sort::Tm,
        Binder::Rel { .. } => Sort::Rel,
    };
    Prop::Quant(q, binder, Box::new(body.close(sort, &names(name))))
}

pub fn all_ty(name: &str, body: Prop) -> Prop {
    quant(Quantifier::Forall, Binder::Ty(Hint::new(name)), name, body)
}

pub fn all_tys(vars: &[String], body: Prop) -> Prop {
    vars.iter().rev().fold(body, |acc, v| all_ty(v, acc))
}

pub fn ex_ty(name: &str, body: Prop) -> Prop {
    quant(Quantifier::Exists, Binder::Ty(Hint::new(name)), name, body)
}

pub fn all_tm(name: &str, ty: Type, body: Prop) -> Prop {
    quant(Quantifier::Forall, Binder::Tm(Hint::new(name), ty), name, body)
}

pub fn ex_tm(name: &str, ty: Type, body: Prop) -> Prop {
    quant(Quantifier::Exists, Binder::Tm(Hint::new(name), ty), name, body)
}

pub fn all_rel(name: &str, dom: Type, cod: Type, flavor: Flavor, body: Prop) -> Prop {
    let binder = Binder::Rel {
        hint: Hint::new(name),
        dom,
        cod,
        flavor,
    };
    quant(Quantifier::Forall, binder, name, body)
}

pub fn rel_var(name: &str) -> Relation {
    Relation::Var(Var::free(name))
}

/// `(x:dom, y:cod). body`.
pub fn compr(x: &str, dom: Type, y: &str, cod: Type, body: Prop) -> Relation {
    Relation::Compr {
        left: Hint::new(x),
        dom,
        right: Hint::new(y),
        cod,
        body: Box::new(body.close(Sort::Tm, &[x.to_string(), y.to_string()])),
    }
}

/// `body[params := args]` with `body` mentioning only `params`.
pub fn type_rel(params: &[String], body: Type, args: Vec<Relation>) -> Relation {
    Relation::TypeRel {
        params: params.iter().map(|p| Hint::new(p.as_str())).collect(),
        body: body.close(Sort::Ty, params),
        args,
    }
}

/// `ρ ⊂ ρ'`: `all x. all y. ρ(x,y) => ρ'(x,y)`.
pub fn subrel(small: Relation, big: Relation, dom: Type, cod: Type) -> Prop {
    let x = fresh("x");
    let y = fresh("y");
    let body = Prop::implies(
        Prop::RelApp(small, var(&x), var(&y)),
        Prop::RelApp(big, var(&x), var(&y)),
    );
    all_tm(&x, dom, all_tm(&y, cod, body))
}

/// `ρ ≡ ρ'`, both inclusions.
pub fn equiv(a: Relation, b: Relation, dom: Type, cod: Type) -> Prop {
    let x = fresh("x");
    let y = fresh("y");
    let ab = Prop::implies(
        Prop::RelApp(a.clone(), var(&x), var(&y)),
        Prop::RelApp(b.clone(), var(&x), var(&y)),
    );
    let ba = Prop::implies(Prop::RelApp(b, var(&x), var(&y)), Prop::RelApp(a, var(&x), var(&y)));
    all_tm(&x, dom, all_tm(&y, cod, Prop::and(ab, ba)))
}
