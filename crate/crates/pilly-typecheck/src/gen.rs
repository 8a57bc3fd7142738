//! Type-directed generation of well-typed terms.
//!
//! The generator works towards a goal type while carrying the linear
//! variables that must still be consumed. When it runs out of depth it
//! closes the goal with the variable itself, a unit, or by feeding the
//! leftovers to a divergent function built from `Y`.

use rand::seq::SliceRandom;
use rand::Rng;

use pilly_core::build::{forall, id, lam, let_bang, let_star, let_tensor, ty_lam, var};
use pilly_core::fresh::fresh;
use pilly_core::{Sort, Syntax, Term, TermContext, Type};

/// A term with the context it lives in and its intended type.
#[derive(Clone, Debug)]
pub struct Sample {
    pub ctx: TermContext,
    pub term: Term,
    pub ty: Type,
}

/// `Y [ty] !(fn z:!ty. let !w = z in w)`, a closed term of any type.
pub fn diverge(ty: &Type) -> Term {
    let z = fresh("z");
    let w = fresh("w");
    let step = lam(&z, Type::bang(ty.clone()), let_bang(&w, Some(ty.clone()), var(&z), var(&w)));
    Term::app(Term::ty_app(Term::Y, ty.clone()), Term::bang(step))
}

/// A random context together with a term of the requested depth that is
/// well typed in it.
pub fn sample<R: Rng>(rng: &mut R, depth: u32) -> Sample {
    let mut g = Gen {
        xi: Vec::new(),
        gamma: Vec::new(),
    };
    for _ in 0..rng.gen_range(0..=2) {
        g.xi.push(fresh(["a", "b", "c"].choose(rng).expect("non-empty")));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let t = g.small_type(rng, 2);
        g.gamma.push((fresh("u"), t));
    }
    let delta: Vec<(String, Type)> = (0..rng.gen_range(0..=2))
        .map(|_| (fresh("x"), g.small_type(rng, 2)))
        .collect();
    let ty = g.small_type(rng, 2);
    let term = g.term(rng, delta.clone(), &ty, depth);
    Sample {
        ctx: TermContext {
            xi: g.xi,
            gamma: g.gamma,
            delta,
        },
        term,
        ty,
    }
}

/// A closed, well-typed term together with its type.
pub fn closed<R: Rng>(rng: &mut R, depth: u32) -> (Term, Type) {
    let mut g = Gen {
        xi: Vec::new(),
        gamma: Vec::new(),
    };
    let ty = g.small_type(rng, 2);
    (g.term(rng, Vec::new(), &ty, depth), ty)
}

type Linear = Vec<(String, Type)>;

struct Gen {
    xi: Vec<String>,
    gamma: Vec<(String, Type)>,
}

fn split<R: Rng>(rng: &mut R, lin: Linear) -> (Linear, Linear) {
    lin.into_iter().partition(|_| rng.gen_bool(0.5))
}

fn with(mut lin: Linear, extra: impl IntoIterator<Item = (String, Type)>) -> Linear {
    lin.extend(extra);
    lin
}

impl Gen {
    fn small_type<R: Rng>(&mut self, rng: &mut R, depth: u32) -> Type {
        let leaf = |g: &Self, rng: &mut R| match g.xi.choose(rng) {
            Some(a) if rng.gen_bool(0.6) => Type::var(a),
            _ => Type::Unit,
        };
        if depth == 0 {
            return leaf(self, rng);
        }
        let d = depth - 1;
        match rng.gen_range(0..7) {
            0 | 1 => leaf(self, rng),
            2 => Type::lolli(self.small_type(rng, d), self.small_type(rng, d)),
            3 => Type::tensor(self.small_type(rng, d), self.small_type(rng, d)),
            4 => Type::bang(self.small_type(rng, d)),
            5 => {
                let a = fresh("t");
                self.xi.push(a.clone());
                let body = self.small_type(rng, d);
                self.xi.pop();
                forall(&a, body)
            }
            _ => Type::lolli(self.small_type(rng, d), leaf(self, rng)),
        }
    }

    fn term<R: Rng>(&mut self, rng: &mut R, lin: Linear, goal: &Type, depth: u32) -> Term {
        if depth == 0 {
            return self.close(lin, goal);
        }
        let d = depth - 1;
        for _ in 0..4 {
            let attempt = match rng.gen_range(0..10) {
                0..=2 => self.intro(rng, &lin, goal, d),
                3..=5 => self.eliminate(rng, &lin, goal, d),
                6 => self.use_shared(rng, &lin, goal, d),
                _ => Some(self.redex(rng, lin.clone(), goal, d)),
            };
            if let Some(t) = attempt {
                return t;
            }
        }
        self.close(lin, goal)
    }

    fn close(&self, lin: Linear, goal: &Type) -> Term {
        if let [(x, t)] = lin.as_slice() {
            if t == goal {
                return var(x);
            }
        }
        if lin.is_empty() {
            if *goal == Type::Unit {
                return Term::Star;
            }
            if let Some((u, _)) = self.gamma.iter().find(|(_, t)| t == goal) {
                return var(u);
            }
        }
        let fun_ty = lin
            .iter()
            .rev()
            .fold(goal.clone(), |acc, (_, t)| Type::lolli(t.clone(), acc));
        Term::apps(diverge(&fun_ty), lin.iter().map(|(x, _)| var(x)))
    }

    fn intro<R: Rng>(&mut self, rng: &mut R, lin: &Linear, goal: &Type, d: u32) -> Option<Term> {
        Some(match goal {
            Type::Lolli(a, b) => {
                let x = fresh(["x", "y", "k"].choose(rng).expect("non-empty"));
                let body = self.term(rng, with(lin.clone(), [(x.clone(), (**a).clone())]), b, d);
                lam(&x, (**a).clone(), body)
            }
            Type::Tensor(a, b) => {
                let (l, r) = split(rng, lin.clone());
                Term::pair(self.term(rng, l, a, d), self.term(rng, r, b, d))
            }
            Type::Forall(h, body) => {
                let a = fresh(h.as_str());
                let opened = body.open(Sort::Ty, std::slice::from_ref(&a));
                self.xi.push(a.clone());
                let t = self.term(rng, lin.clone(), &opened, d);
                self.xi.pop();
                ty_lam(&a, t)
            }
            Type::Bang(a) if lin.is_empty() => Term::bang(self.term(rng, Vec::new(), a, d)),
            Type::Unit if lin.is_empty() => Term::Star,
            _ => return None,
        })
    }

    fn eliminate<R: Rng>(&mut self, rng: &mut R, lin: &Linear, goal: &Type, d: u32) -> Option<Term> {
        if lin.is_empty() {
            return None;
        }
        let i = rng.gen_range(0..lin.len());
        let mut rest = lin.clone();
        let (x, sigma) = rest.remove(i);
        Some(match sigma {
            Type::Unit => let_star(var(&x), self.term(rng, rest, goal, d)),
            Type::Tensor(a, b) => {
                let (y, z) = (fresh("y"), fresh("z"));
                let annot = rng.gen_bool(0.5).then(|| ((*a).clone(), (*b).clone()));
                let body = self.term(rng, with(rest, [(y.clone(), *a), (z.clone(), *b)]), goal, d);
                let_tensor(&y, &z, annot, var(&x), body)
            }
            Type::Bang(a) => {
                let w = fresh("w");
                let annot = rng.gen_bool(0.5).then(|| (*a).clone());
                self.gamma.push((w.clone(), *a));
                let body = self.term(rng, rest, goal, d);
                self.gamma.pop();
                let_bang(&w, annot, var(&x), body)
            }
            Type::Lolli(a, b) => {
                let (l1, l2) = split(rng, rest);
                let arg = self.term(rng, l1, &a, d);
                let call = Term::app(var(&x), arg);
                if l2.is_empty() && *b == *goal && rng.gen_bool(0.5) {
                    call
                } else {
                    self.continue_with(rng, l2, *b, call, goal, d)
                }
            }
            Type::Forall(_, body) => {
                let s = self.small_type(rng, 1);
                let inst = body.instantiate(&s);
                self.continue_with(rng, rest, inst, Term::ty_app(var(&x), s), goal, d)
            }
            Type::Var(_) => return None,
        })
    }

    /// `(fn r:ty. k) head` where `k` consumes `r` and `lin`.
    fn continue_with<R: Rng>(&mut self, rng: &mut R, lin: Linear, ty: Type, head: Term, goal: &Type, d: u32) -> Term {
        let r = fresh("r");
        let k = self.term(rng, with(lin, [(r.clone(), ty.clone())]), goal, d);
        Term::app(lam(&r, ty, k), head)
    }

    fn use_shared<R: Rng>(&mut self, rng: &mut R, lin: &Linear, goal: &Type, d: u32) -> Option<Term> {
        let (u, sigma) = self.gamma.choose(rng)?.clone();
        Some(match sigma {
            t if t == *goal && lin.is_empty() => var(&u),
            Type::Lolli(a, b) => {
                let (l1, l2) = split(rng, lin.clone());
                let arg = self.term(rng, l1, &a, d);
                self.continue_with(rng, l2, *b, Term::app(var(&u), arg), goal, d)
            }
            Type::Forall(_, body) => {
                let s = self.small_type(rng, 1);
                let inst = body.instantiate(&s);
                self.continue_with(rng, lin.clone(), inst, Term::ty_app(var(&u), s), goal, d)
            }
            _ => return None,
        })
    }

    fn redex<R: Rng>(&mut self, rng: &mut R, lin: Linear, goal: &Type, d: u32) -> Term {
        match rng.gen_range(0..5) {
            0 => {
                let a = self.small_type(rng, 1);
                let (l1, l2) = split(rng, lin);
                let arg = self.term(rng, l2, &a, d);
                self.continue_with(rng, l1, a, arg, goal, d)
            }
            1 => {
                let a = fresh("a");
                let poly_id = ty_lam(&a, id(Type::var(&a)));
                let t = self.term(rng, lin, goal, d);
                Term::app(Term::ty_app(poly_id, goal.clone()), t)
            }
            2 => {
                let a = self.small_type(rng, 1);
                let w = fresh("w");
                let shared = self.term(rng, Vec::new(), &a, d);
                self.gamma.push((w.clone(), a));
                let body = self.term(rng, lin, goal, d);
                self.gamma.pop();
                let_bang(&w, None, Term::bang(shared), body)
            }
            3 => {
                let (a, b) = (self.small_type(rng, 1), self.small_type(rng, 1));
                let (l1, rest) = split(rng, lin);
                let (l2, l3) = split(rng, rest);
                let (y, z) = (fresh("y"), fresh("z"));
                let pair = Term::pair(self.term(rng, l1, &a, d), self.term(rng, l2, &b, d));
                let body = self.term(rng, with(l3, [(y.clone(), a), (z.clone(), b)]), goal, d);
                let_tensor(&y, &z, None, pair, body)
            }
            _ => let_star(Term::Star, self.term(rng, lin, goal, d)),
        }
    }
}
