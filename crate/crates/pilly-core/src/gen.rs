//! Random well-scoped syntax for property tests. Objects are not typed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::syntax::{Binder, Flavor, Hint, Prop, Quantifier, Relation, Term, Type, Var};

const HINTS: &[&str] = &["a", "b", "x", "y", "f", "g", "R", "S", "a1", "x'"];
const FREE_TY: &[&str] = &["p", "q", "a"];
const FREE_TM: &[&str] = &["u", "v", "x"];
const FREE_REL: &[&str] = &["R", "Q"];

#[derive(Clone, Copy, Debug, Default)]
pub struct Scope {
    pub ty: usize,
    pub tm: usize,
    pub rel: usize,
}

fn hint<R: Rng>(rng: &mut R) -> Hint {
    Hint::new(*HINTS.choose(rng).expect("non-empty"))
}

fn var<R: Rng>(rng: &mut R, bound: usize, free: &[&str]) -> Var {
    if bound > 0 && rng.gen_bool(0.8) {
        Var::Bound(rng.gen_range(0..bound))
    } else {
        Var::free(*free.choose(rng).expect("non-empty"))
    }
}

pub fn ty<R: Rng>(rng: &mut R, sc: Scope, depth: u32) -> Type {
    if depth == 0 {
        return match rng.gen_range(0..3) {
            0 => Type::Unit,
            _ => Type::Var(var(rng, sc.ty, FREE_TY)),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..7) {
        0 => Type::Unit,
        1 => Type::Var(var(rng, sc.ty, FREE_TY)),
        2 => Type::lolli(ty(rng, sc, d), ty(rng, sc, d)),
        3 => Type::tensor(ty(rng, sc, d), ty(rng, sc, d)),
        4 => Type::bang(ty(rng, sc, d)),
        _ => Type::Forall(hint(rng), Box::new(ty(rng, Scope { ty: sc.ty + 1, ..sc }, d))),
    }
}

/// A type whose only variables are `n` dangling indices.
pub fn closed_ty<R: Rng>(rng: &mut R, n: usize, depth: u32) -> Type {
    fn go<R: Rng>(rng: &mut R, bound: usize, depth: u32) -> Type {
        let leaf = |rng: &mut R| {
            if bound > 0 && rng.gen_bool(0.7) {
                Type::Var(Var::Bound(rng.gen_range(0..bound)))
            } else {
                Type::Unit
            }
        };
        if depth == 0 {
            return leaf(rng);
        }
        let d = depth - 1;
        match rng.gen_range(0..6) {
            0 => leaf(rng),
            1 => Type::lolli(go(rng, bound, d), go(rng, bound, d)),
            2 => Type::tensor(go(rng, bound, d), go(rng, bound, d)),
            3 => Type::bang(go(rng, bound, d)),
            4 => Type::Forall(hint(rng), Box::new(go(rng, bound + 1, d))),
            _ => leaf(rng),
        }
    }
    go(rng, n, depth)
}

fn opt_ty<R: Rng>(rng: &mut R, sc: Scope, depth: u32) -> Option<Type> {
    rng.gen_bool(0.5).then(|| ty(rng, sc, depth))
}

pub fn term<R: Rng>(rng: &mut R, sc: Scope, depth: u32) -> Term {
    let tdepth = 2;
    if depth == 0 {
        return match rng.gen_range(0..4) {
            0 => Term::Star,
            1 => Term::Y,
            _ => Term::Var(var(rng, sc.tm, FREE_TM)),
        };
    }
    let d = depth - 1;
    let under_tm = |n| Scope { tm: sc.tm + n, ..sc };
    match rng.gen_range(0..11) {
        0 => Term::Var(var(rng, sc.tm, FREE_TM)),
        1 => Term::Lam {
            hint: hint(rng),
            ty: ty(rng, sc, tdepth),
            body: Box::new(term(rng, under_tm(1), d)),
        },
        2 => Term::app(term(rng, sc, d), term(rng, sc, d)),
        3 => Term::pair(term(rng, sc, d), term(rng, sc, d)),
        4 => Term::bang(term(rng, sc, d)),
        5 => Term::TyLam {
            hint: hint(rng),
            body: Box::new(term(rng, Scope { ty: sc.ty + 1, ..sc }, d)),
        },
        6 => Term::ty_app(term(rng, sc, d), ty(rng, sc, tdepth)),
        7 => Term::LetStar {
            scrut: Box::new(term(rng, sc, d)),
            body: Box::new(term(rng, sc, d)),
        },
        8 => Term::LetTensor {
            left: hint(rng),
            right: hint(rng),
            annot: rng
                .gen_bool(0.5)
                .then(|| (ty(rng, sc, tdepth), ty(rng, sc, tdepth))),
            scrut: Box::new(term(rng, sc, d)),
            body: Box::new(term(rng, under_tm(2), d)),
        },
        9 => Term::LetBang {
            hint: hint(rng),
            annot: opt_ty(rng, sc, tdepth),
            scrut: Box::new(term(rng, sc, d)),
            body: Box::new(term(rng, under_tm(1), d)),
        },
        _ => Term::Star,
    }
}

pub fn relation<R: Rng>(rng: &mut R, sc: Scope, depth: u32) -> Relation {
    if depth == 0 {
        return Relation::Var(var(rng, sc.rel, FREE_REL));
    }
    let d = depth - 1;
    match rng.gen_range(0..3) {
        0 => Relation::Var(var(rng, sc.rel, FREE_REL)),
        1 => Relation::Compr {
            left: hint(rng),
            dom: ty(rng, sc, 2),
            right: hint(rng),
            cod: ty(rng, sc, 2),
            body: Box::new(prop(rng, Scope { tm: sc.tm + 2, ..sc }, d)),
        },
        _ => {
            let n = rng.gen_range(0..3);
            Relation::TypeRel {
                params: (0..n).map(|_| hint(rng)).collect(),
                body: closed_ty(rng, n, 3),
                args: (0..n).map(|_| relation(rng, sc, d)).collect(),
            }
        }
    }
}

pub fn prop<R: Rng>(rng: &mut R, sc: Scope, depth: u32) -> Prop {
    if depth == 0 {
        return match rng.gen_range(0..4) {
            0 => Prop::Top,
            1 => Prop::Bottom,
            _ => Prop::Eq(ty(rng, sc, 1), term(rng, sc, 1), term(rng, sc, 1)),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..9) {
        0 => Prop::Eq(ty(rng, sc, 2), term(rng, sc, d), term(rng, sc, d)),
        1 => Prop::RelApp(relation(rng, sc, d), term(rng, sc, d), term(rng, sc, d)),
        2 => Prop::implies(prop(rng, sc, d), prop(rng, sc, d)),
        3 => Prop::and(prop(rng, sc, d), prop(rng, sc, d)),
        4 => Prop::or(prop(rng, sc, d), prop(rng, sc, d)),
        5 => Prop::Top,
        _ => {
            let q = if rng.gen_bool(0.5) {
                Quantifier::Forall
            } else {
                Quantifier::Exists
            };
            let (binder, inner) = match rng.gen_range(0..3) {
                0 => (Binder::Ty(hint(rng)), Scope { ty: sc.ty + 1, ..sc }),
                1 => (Binder::Tm(hint(rng), ty(rng, sc, 2)), Scope { tm: sc.tm + 1, ..sc }),
                _ => (
                    Binder::Rel {
                        hint: hint(rng),
                        dom: ty(rng, sc, 2),
                        cod: ty(rng, sc, 2),
                        flavor: if rng.gen_bool(0.5) {
                            Flavor::Rel
                        } else {
                            Flavor::AdmRel
                        },
                    },
                    Scope { rel: sc.rel + 1, ..sc },
                ),
            };
            Prop::Quant(q, binder, Box::new(prop(rng, inner, d)))
        }
    }
}
