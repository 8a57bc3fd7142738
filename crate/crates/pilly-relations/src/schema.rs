//! Schemas of the logic instantiated at a type or a term.

use pilly_core::build::{all_rel, all_tm, all_ty, all_tys, equiv, rel_var, type_rel, var};
use pilly_core::fresh::fresh;
use pilly_core::{Flavor, Prop, Relation, Sort, Syntax, Term, TermContext, Type};
use pilly_typecheck::{infer, kind_check};

use crate::construct::eq;
use crate::RelError;

fn free_ty_vars(ty: &Type) -> Vec<String> {
    ty.free_names(Sort::Ty).into_iter().collect()
}

/// `all a. ty[eq_a] == eq_ty` over the free type variables `a` of `ty`.
pub fn identity_extension(ty: &Type) -> Result<Prop, RelError> {
    let vars = free_ty_vars(ty);
    kind_check(&vars, ty)?;
    let args = vars.iter().map(|a| eq(&Type::var(a)).rel).collect();
    let lifted = type_rel(&vars, ty.clone(), args);
    Ok(all_tys(&vars, equiv(lifted, eq(ty).rel, ty.clone(), ty.clone())))
}

/// For `ty = all b. s`:
/// `all a. all u:ty. all b, b'. all R:AdmRel(b, b'). s[R, eq_a](u b, u b')`.
/// A given `subject` replaces the quantified `u`.
pub fn parametricity(ty: &Type, subject: Option<&Term>) -> Result<Prop, RelError> {
    let Type::Forall(h, body) = ty else {
        return Err(RelError::Ill("parametricity needs a type of the form `all b. s`".into()));
    };
    let vars = free_ty_vars(ty);
    kind_check(&vars, ty)?;
    let (b, b2, r, u) = (fresh(h.as_str()), fresh(&format!("{}'", h.as_str())), fresh("R"), fresh("u"));
    let s = body.open(Sort::Ty, std::slice::from_ref(&b));
    let mut params = vec![b.clone()];
    params.extend(vars.iter().cloned());
    let mut args = vec![rel_var(&r)];
    args.extend(vars.iter().map(|a| eq(&Type::var(a)).rel));
    if let Some(t) = subject {
        let ctx = vars.iter().fold(TermContext::new(), |c, a| c.with_ty_var(a.clone()));
        let found = infer(&ctx, t)?.ty;
        if found != *ty {
            return Err(RelError::Mismatch {
                what: "parametricity subject".into(),
                expected: pilly_core::print_type(ty),
                found: pilly_core::print_type(&found),
            });
        }
    }
    let u_term = subject.cloned().unwrap_or_else(|| var(&u));
    let applied = Prop::RelApp(
        type_rel(&params, s, args),
        Term::ty_app(u_term.clone(), Type::var(&b)),
        Term::ty_app(u_term, Type::var(&b2)),
    );
    let inner = all_ty(
        &b,
        all_ty(&b2, all_rel(&r, Type::var(&b), Type::var(&b2), Flavor::AdmRel, applied)),
    );
    let quantified = match subject {
        Some(_) => inner,
        None => all_tm(&u, ty.clone(), inner),
    };
    Ok(all_tys(&vars, quantified))
}

/// The logical-relations lemma for `ctx |- t`: related inputs give related
/// outputs. Linear and intuitionistic variables are both quantified as
/// ordinary term variables.
pub fn lrl(ctx: &TermContext, t: &Term) -> Result<Prop, RelError> {
    let ty = infer(ctx, t)?.ty;
    let alphas = ctx.xi.clone();
    let betas: Vec<String> = alphas.iter().map(|a| fresh(&format!("{a}'"))).collect();
    let rels: Vec<String> = alphas.iter().map(|_| fresh("R")).collect();
    let beta_tys: Vec<Type> = betas.iter().map(Type::var).collect();
    let interp = |ty: &Type| -> Relation { type_rel(&alphas, ty.clone(), rels.iter().map(|r| rel_var(r)).collect()) };

    let vars: Vec<(String, Type)> = ctx.delta.iter().chain(ctx.gamma.iter()).cloned().collect();
    let primes: Vec<String> = vars.iter().map(|(x, _)| fresh(&format!("{x}'"))).collect();
    let hyps = Prop::conj(
        vars.iter()
            .zip(&primes)
            .map(|((x, s), x2)| Prop::RelApp(interp(s), var(x), var(x2))),
    );
    let mut image = t.subst_tys(&alphas, &beta_tys);
    for ((x, _), x2) in vars.iter().zip(&primes) {
        image = image.subst_tm(x, &var(x2));
    }
    let concl = Prop::RelApp(interp(&ty), t.clone(), image);
    let mut prop = if vars.is_empty() { concl } else { Prop::implies(hyps, concl) };

    // Quantifiers are added innermost first.
    let split = ctx.delta.len();
    let (lin, int) = vars.split_at(split);
    let (lin_p, int_p) = primes.split_at(split);
    for group in [(int, int_p), (lin, lin_p)] {
        for ((_, s), x2) in group.0.iter().zip(group.1).rev() {
            prop = all_tm(x2, s.subst_tys(&alphas, &beta_tys), prop);
        }
        for (x, s) in group.0.iter().rev() {
            prop = all_tm(x, s.clone(), prop);
        }
    }
    for ((a, b), r) in alphas.iter().zip(&betas).zip(&rels).rev() {
        prop = all_rel(r, Type::var(a), Type::var(b), Flavor::AdmRel, prop);
    }
    prop = all_tys(&betas, prop);
    prop = all_tys(&alphas, prop);
    Ok(prop)
}

