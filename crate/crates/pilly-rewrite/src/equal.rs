use pilly_core::{print_type, Term, TermContext};
use pilly_typecheck::infer;

use crate::step::{step, unroll_y};
use crate::{RewriteConfig, RewriteError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub term: Term,
    pub steps: usize,
    pub unrolls: usize,
}

/// Rewrites to normal form without unrolling `Y`.
pub fn normalize(t: &Term, cfg: &RewriteConfig) -> Result<Normalized, RewriteError> {
    normalize_with_unrolls(t, 0, cfg.fuel, cfg.eta)
}

/// Normalizes, then alternates unrolling the outermost `Y` redex and
/// normalizing again, at most `unrolls` times. The fuel bounds all steps.
pub fn normalize_with_unrolls(t: &Term, unrolls: usize, fuel: usize, eta: bool) -> Result<Normalized, RewriteError> {
    let mut cur = t.clone();
    let mut steps = 0;
    let mut done = 0;
    loop {
        while let Some(next) = step(&cur, eta) {
            if steps == fuel {
                return Err(RewriteError::FuelExhausted { last: cur, steps });
            }
            steps += 1;
            cur = next;
        }
        if done == unrolls {
            break;
        }
        match unroll_y(&cur) {
            Ok(next) => {
                cur = next;
                done += 1;
            }
            Err(_) => break,
        }
    }
    Ok(Normalized {
        term: cur,
        steps,
        unrolls: done,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unknown {
    Fuel,
    YBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqResult {
    /// A common normal form.
    Equal(Term),
    NotEqual(Term, Term),
    Unknown(Unknown),
}

impl EqResult {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqResult::Equal(_))
    }
}

/// Normal forms of `t` after 0, 1, ... unrollings, stopping early when no
/// `Y` redex is left. The flag reports fuel exhaustion.
fn unfoldings(t: &Term, cfg: &RewriteConfig) -> (Vec<Term>, bool) {
    let mut out = Vec::new();
    let mut cur = match normalize(t, cfg) {
        Ok(n) => n.term,
        Err(_) => return (out, true),
    };
    out.push(cur.clone());
    for _ in 0..cfg.y_unroll_budget {
        let Ok(next) = unroll_y(&cur) else { break };
        match normalize(&next, cfg) {
            Ok(n) => cur = n.term,
            Err(_) => return (out, true),
        }
        out.push(cur.clone());
    }
    (out, false)
}

/// Compares normal forms of `a` and `b` for every pair of unrolling depths
/// within the budget.
pub fn equal(a: &Term, b: &Term, cfg: &RewriteConfig) -> EqResult {
    let (left, left_out) = unfoldings(a, cfg);
    let (right, right_out) = unfoldings(b, cfg);
    for l in &left {
        if let Some(r) = right.iter().find(|r| *r == l) {
            return EqResult::Equal(r.clone());
        }
    }
    if left_out || right_out {
        return EqResult::Unknown(Unknown::Fuel);
    }
    let unrollable = |v: &[Term]| v.last().is_some_and(|t| unroll_y(t).is_ok());
    if unrollable(&left) || unrollable(&right) {
        return EqResult::Unknown(Unknown::YBudget);
    }
    EqResult::NotEqual(left[0].clone(), right[0].clone())
}

/// [`equal`] after checking that both terms have the same type in `ctx`.
/// The linear context is made intuitionistic, since either side may use it.
pub fn equal_typed(ctx: &TermContext, a: &Term, b: &Term, cfg: &RewriteConfig) -> Result<EqResult, RewriteError> {
    let ctx = ctx.promote_linear();
    let ta = infer(&ctx, a)?;
    let tb = infer(&ctx, b)?;
    if ta.ty != tb.ty {
        return Err(RewriteError::TypeMismatch {
            left: print_type(&ta.ty),
            right: print_type(&tb.ty),
        });
    }
    Ok(equal(&ta.elaborated, &tb.elaborated, cfg))
}
