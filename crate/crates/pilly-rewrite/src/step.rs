use pilly_core::fresh::fresh;
use pilly_core::{Sort, Syntax, Term, Type, Var};

use crate::RewriteError;

/// The rule applied by a single step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    BetaLam,
    BetaTy,
    BetaStar,
    BetaTensor,
    BetaBang,
    /// A let-binding moved out of its enclosing linear frame.
    Hoist,
    EtaLam,
    EtaTy,
    EtaStar,
    EtaTensor,
    EtaBang,
}

/// One leftmost-outermost step, or `None` if `t` is normal.
pub fn step(t: &Term, eta: bool) -> Option<Term> {
    step_with_rule(t, eta).map(|(_, t)| t)
}

pub fn step_with_rule(t: &Term, eta: bool) -> Option<(Rule, Term)> {
    if let Some(r) = contract(t, eta) {
        return Some(r);
    }
    let re = |s: &Term| step_with_rule(s, eta);
    let b = |t: Term| Box::new(t);
    match t {
        Term::Var(_) | Term::Star | Term::Y => None,
        Term::Lam { hint, ty, body } => re(body).map(|(r, body)| {
            (
                r,
                Term::Lam {
                    hint: hint.clone(),
                    ty: ty.clone(),
                    body: b(body),
                },
            )
        }),
        Term::App(f, a) => re(f)
            .map(|(r, f)| (r, Term::app(f, (**a).clone())))
            .or_else(|| re(a).map(|(r, a)| (r, Term::app((**f).clone(), a)))),
        Term::Pair(l, rt) => re(l)
            .map(|(r, l)| (r, Term::pair(l, (**rt).clone())))
            .or_else(|| re(rt).map(|(r, rt)| (r, Term::pair((**l).clone(), rt)))),
        Term::Bang(x) => re(x).map(|(r, x)| (r, Term::bang(x))),
        Term::TyLam { hint, body } => re(body).map(|(r, body)| {
            (
                r,
                Term::TyLam {
                    hint: hint.clone(),
                    body: b(body),
                },
            )
        }),
        Term::TyApp(f, s) => re(f).map(|(r, f)| (r, Term::ty_app(f, s.clone()))),
        Term::LetStar { .. } | Term::LetTensor { .. } | Term::LetBang { .. } => {
            let (_, scrut, body) = let_parts(t).expect("let form");
            re(scrut)
                .map(|(r, s)| (r, with_let(t, s, body.clone())))
                .or_else(|| re(body).map(|(r, bd)| (r, with_let(t, scrut.clone(), bd))))
        }
    }
}

fn contract(t: &Term, eta: bool) -> Option<(Rule, Term)> {
    beta(t)
        .or_else(|| hoist(t).map(|t| (Rule::Hoist, t)))
        .or_else(|| if eta { eta_contract(t) } else { None })
}

fn beta(t: &Term) -> Option<(Rule, Term)> {
    match t {
        Term::App(f, a) => match &**f {
            Term::Lam { body, .. } => Some((Rule::BetaLam, body.instantiate_tm(std::slice::from_ref(&**a)))),
            _ => None,
        },
        Term::TyApp(f, s) => match &**f {
            Term::TyLam { body, .. } => Some((Rule::BetaTy, body.instantiate_ty(std::slice::from_ref(s)))),
            _ => None,
        },
        Term::LetStar { scrut, body } if **scrut == Term::Star => Some((Rule::BetaStar, (**body).clone())),
        Term::LetTensor { scrut, body, .. } => match &**scrut {
            Term::Pair(l, r) => Some((Rule::BetaTensor, body.instantiate_tm(&[(**l).clone(), (**r).clone()]))),
            _ => None,
        },
        Term::LetBang { scrut, body, .. } => match &**scrut {
            Term::Bang(u) => Some((Rule::BetaBang, body.instantiate_tm(std::slice::from_ref(&**u)))),
            _ => None,
        },
        _ => None,
    }
}

/// Number of term variables bound by a let form, its scrutinee and body.
fn let_parts(t: &Term) -> Option<(usize, &Term, &Term)> {
    match t {
        Term::LetStar { scrut, body } => Some((0, scrut, body)),
        Term::LetTensor { scrut, body, .. } => Some((2, scrut, body)),
        Term::LetBang { scrut, body, .. } => Some((1, scrut, body)),
        _ => None,
    }
}

/// The let form `t` with a new scrutinee and body.
fn with_let(t: &Term, scrut: Term, body: Term) -> Term {
    let (scrut, body) = (Box::new(scrut), Box::new(body));
    match t {
        Term::LetStar { .. } => Term::LetStar { scrut, body },
        Term::LetTensor { left, right, annot, .. } => Term::LetTensor {
            left: left.clone(),
            right: right.clone(),
            annot: annot.clone(),
            scrut,
            body,
        },
        Term::LetBang { hint, annot, .. } => Term::LetBang {
            hint: hint.clone(),
            annot: annot.clone(),
            scrut,
            body,
        },
        other => unreachable!("not a let form: {other:?}"),
    }
}

fn annotations(t: &Term) -> Vec<&Type> {
    match t {
        Term::LetTensor { annot: Some((a, b)), .. } => vec![a, b],
        Term::LetBang { annot: Some(a), .. } => vec![a],
        _ => Vec::new(),
    }
}

fn map_annotations(t: Term, f: impl Fn(&Type) -> Type) -> Term {
    match t {
        Term::LetTensor {
            left,
            right,
            annot,
            scrut,
            body,
        } => Term::LetTensor {
            left,
            right,
            annot: annot.map(|(a, b)| (f(&a), f(&b))),
            scrut,
            body,
        },
        Term::LetBang {
            hint,
            annot,
            scrut,
            body,
        } => Term::LetBang {
            hint,
            annot: annot.map(|a| f(&a)),
            scrut,
            body,
        },
        other => other,
    }
}

fn shift_tm(t: &Term, by: usize) -> Term {
    t.shift_by(0, by as isize, 0)
}

/// Commuting conversions, read right to left: `C[let p = s in u]` becomes
/// `let p = s in C[u]` for a one-level linear frame `C`.
fn hoist(t: &Term) -> Option<Term> {
    match t {
        Term::App(f, a) => {
            if let Some((k, s, u)) = let_parts(f) {
                Some(with_let(f, s.clone(), Term::app(u.clone(), shift_tm(a, k))))
            } else {
                let (k, s, u) = let_parts(a)?;
                Some(with_let(a, s.clone(), Term::app(shift_tm(f, k), u.clone())))
            }
        }
        Term::Pair(l, r) => {
            if let Some((k, s, u)) = let_parts(l) {
                Some(with_let(l, s.clone(), Term::pair(u.clone(), shift_tm(r, k))))
            } else {
                let (k, s, u) = let_parts(r)?;
                Some(with_let(r, s.clone(), Term::pair(shift_tm(l, k), u.clone())))
            }
        }
        Term::TyApp(f, ty) => {
            let (_, s, u) = let_parts(f)?;
            Some(with_let(f, s.clone(), Term::ty_app(u.clone(), ty.clone())))
        }
        Term::LetStar { scrut, .. } | Term::LetTensor { scrut, .. } | Term::LetBang { scrut, .. } => {
            let (m, _, body) = let_parts(t)?;
            let (k, s, u) = let_parts(scrut)?;
            let outer = with_let(t, u.clone(), body.shift_above(Sort::Tm, m, k as isize));
            Some(with_let(scrut, s.clone(), outer))
        }
        Term::Lam { hint, ty, body } => {
            let (k, s, u) = let_parts(body)?;
            if s.mentions_index(Sort::Tm, 0) {
                return None;
            }
            let x = fresh(hint.as_str());
            let lets: Vec<String> = (0..k).map(|_| fresh("l")).collect();
            let mut before = vec![x.clone()];
            before.extend(lets.iter().cloned());
            let mut after = lets;
            after.push(x);
            let rotated = u.open(Sort::Tm, &before).close(Sort::Tm, &after);
            let lam = Term::Lam {
                hint: hint.clone(),
                ty: ty.clone(),
                body: Box::new(rotated),
            };
            Some(with_let(body, s.shift_by(0, -1, 0), lam))
        }
        Term::TyLam { hint, body } => {
            let (_, s, u) = let_parts(body)?;
            if s.mentions_index(Sort::Ty, 0) || annotations(body).iter().any(|a| a.mentions_index(Sort::Ty, 0)) {
                return None;
            }
            let lam = Term::TyLam {
                hint: hint.clone(),
                body: Box::new(u.clone()),
            };
            let moved = with_let(body, s.shift_by(-1, 0, 0), lam);
            Some(map_annotations(moved, |a| a.shift_by(-1, 0, 0)))
        }
        _ => None,
    }
}

fn is_bound(t: &Term, i: usize) -> bool {
    matches!(t, Term::Var(Var::Bound(j)) if *j == i)
}

fn eta_contract(t: &Term) -> Option<(Rule, Term)> {
    match t {
        Term::Lam { body, .. } => match &**body {
            Term::App(f, x) if is_bound(x, 0) && !f.mentions_index(Sort::Tm, 0) => {
                Some((Rule::EtaLam, f.shift_by(0, -1, 0)))
            }
            _ => None,
        },
        Term::TyLam { body, .. } => match &**body {
            Term::TyApp(f, Type::Var(Var::Bound(0))) if !f.mentions_index(Sort::Ty, 0) => {
                Some((Rule::EtaTy, f.shift_by(-1, 0, 0)))
            }
            _ => None,
        },
        Term::LetStar { scrut, body } if **body == Term::Star => Some((Rule::EtaStar, (**scrut).clone())),
        Term::LetTensor { scrut, body, .. } => match &**body {
            Term::Pair(l, r) if is_bound(l, 1) && is_bound(r, 0) => Some((Rule::EtaTensor, (**scrut).clone())),
            _ => None,
        },
        Term::LetBang { scrut, body, .. } => match &**body {
            Term::Bang(x) if is_bound(x, 0) => Some((Rule::EtaBang, (**scrut).clone())),
            _ => None,
        },
        _ => None,
    }
}

/// Whether `t` has the shape `Y [s] !f`.
fn is_y_redex(t: &Term) -> bool {
    match t {
        Term::App(f, a) => matches!((&**f, &**a), (Term::TyApp(y, _), Term::Bang(_)) if **y == Term::Y),
        _ => false,
    }
}

/// Whether `t` contains a subterm of the form `Y [s] !f`.
pub fn find_y_redex(t: &Term) -> bool {
    unroll_outermost(t).is_some()
}

/// Replaces the leftmost-outermost `Y [s] !f` by `f !(Y [s] !f)`.
pub fn unroll_y(t: &Term) -> Result<Term, RewriteError> {
    unroll_outermost(t).ok_or(RewriteError::NoYRedex)
}

fn unroll_outermost(t: &Term) -> Option<Term> {
    if is_y_redex(t) {
        let Term::App(_, bang) = t else { unreachable!() };
        let Term::Bang(f) = &**bang else { unreachable!() };
        return Some(Term::app((**f).clone(), Term::bang(t.clone())));
    }
    let b = |t: Term| Box::new(t);
    match t {
        Term::Var(_) | Term::Star | Term::Y => None,
        Term::Lam { hint, ty, body } => unroll_outermost(body).map(|body| Term::Lam {
            hint: hint.clone(),
            ty: ty.clone(),
            body: b(body),
        }),
        Term::App(f, a) => unroll_outermost(f)
            .map(|f| Term::app(f, (**a).clone()))
            .or_else(|| unroll_outermost(a).map(|a| Term::app((**f).clone(), a))),
        Term::Pair(l, r) => unroll_outermost(l)
            .map(|l| Term::pair(l, (**r).clone()))
            .or_else(|| unroll_outermost(r).map(|r| Term::pair((**l).clone(), r))),
        Term::Bang(x) => unroll_outermost(x).map(Term::bang),
        Term::TyLam { hint, body } => unroll_outermost(body).map(|body| Term::TyLam {
            hint: hint.clone(),
            body: b(body),
        }),
        Term::TyApp(f, s) => unroll_outermost(f).map(|f| Term::ty_app(f, s.clone())),
        _ => {
            let (_, scrut, body) = let_parts(t).expect("let form");
            unroll_outermost(scrut)
                .map(|s| with_let(t, s, body.clone()))
                .or_else(|| unroll_outermost(body).map(|bd| with_let(t, scrut.clone(), bd)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pilly_core::build::{id, lam, let_star, ty_lam, var};

    #[test]
    fn beta_lam() {
        let t = Term::app(id(Type::Unit), var("u"));
        assert_eq!(step_with_rule(&t, true), Some((Rule::BetaLam, var("u"))));
    }

    #[test]
    fn hoist_out_of_argument() {
        let t = Term::app(var("f"), let_star(var("s"), var("u")));
        assert_eq!(
            step_with_rule(&t, true),
            Some((Rule::Hoist, let_star(var("s"), Term::app(var("f"), var("u")))))
        );
    }

    #[test]
    fn hoist_out_of_lambda_rotates_indices() {
        use pilly_core::build::let_tensor;
        let body = let_tensor("a", "b", None, var("p"), Term::pair(var("x"), Term::pair(var("a"), var("b"))));
        let t = lam("x", Type::Unit, body);
        let expected = let_tensor(
            "a",
            "b",
            None,
            var("p"),
            lam("x", Type::Unit, Term::pair(var("x"), Term::pair(var("a"), var("b")))),
        );
        assert_eq!(step(&t, true), Some(expected));
    }

    #[test]
    fn no_hoist_when_scrutinee_uses_binder() {
        let t = lam("x", Type::Unit, let_star(var("x"), Term::Star));
        assert_eq!(step_with_rule(&t, true).map(|p| p.0), Some(Rule::EtaStar));
        assert_eq!(step_with_rule(&t, false), None);
    }

    #[test]
    fn eta_needs_non_occurrence() {
        let t = lam("x", Type::Unit, Term::app(var("f"), var("x")));
        assert_eq!(step(&t, true), Some(var("f")));
        let t = lam("x", Type::Unit, Term::app(var("x"), var("x")));
        assert_eq!(step(&t, true), None);
        let t = ty_lam("a", Term::ty_app(var("f"), Type::var("a")));
        assert_eq!(step(&t, true), Some(var("f")));
    }

    #[test]
    fn unroll() {
        let f = var("f");
        let y = Term::app(Term::ty_app(Term::Y, Type::Unit), Term::bang(f.clone()));
        assert_eq!(unroll_y(&y), Ok(Term::app(f, Term::bang(y.clone()))));
        assert_eq!(unroll_y(&Term::Star), Err(RewriteError::NoYRedex));
        assert_eq!(step(&y, true), None);
    }
}
