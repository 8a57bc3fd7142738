use pilly_core::fresh::fresh;
use pilly_core::{print_term, print_type, Term, TermContext, Type};
use pilly_typecheck::gen::{closed, sample};
use pilly_typecheck::{check_substitution_lemma, infer, LemmaError, Substitution};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generated_terms_have_their_intended_type(seed in any::<u64>()) {
        let s = sample(&mut seeded(seed), 6);
        let typing = infer(&s.ctx, &s.term)
            .map_err(|e| TestCaseError::fail(format!("{e}\n{}", print_term(&s.term))))?;
        prop_assert_eq!(typing.ty, s.ty);
    }

    #[test]
    fn inference_is_deterministic_up_to_alpha(seed in any::<u64>()) {
        let s = sample(&mut seeded(seed), 6);
        let a = infer(&s.ctx, &s.term).unwrap();
        let b = infer(&s.ctx, &s.term).unwrap();
        prop_assert_eq!(a.ty, b.ty);
        prop_assert_eq!(a.elaborated, b.elaborated);
    }

    #[test]
    fn elaboration_preserves_type(seed in any::<u64>()) {
        let s = sample(&mut seeded(seed), 5);
        let a = infer(&s.ctx, &s.term).unwrap();
        let b = infer(&s.ctx, &a.elaborated).unwrap();
        prop_assert_eq!(a.ty, b.ty);
    }

    #[test]
    fn linear_substitution_lemma(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let s = sample(&mut rng, 4);
        if s.ctx.delta.is_empty() {
            return Ok(());
        }
        let (x, sigma) = s.ctx.delta[rng.gen_range(0..s.ctx.delta.len())].clone();
        let z = fresh("z");
        let arg = Term::app(pilly_core::build::id(sigma.clone()), Term::var(&z));
        let arg_linear = vec![(z, sigma)];
        check_lemma(&s.ctx, &s.term, Substitution::Linear { var: &x, arg: &arg, arg_linear: &arg_linear })?;
    }

    #[test]
    fn intuitionistic_substitution_lemma(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let s = sample(&mut rng, 4);
        if s.ctx.gamma.is_empty() {
            return Ok(());
        }
        let (u, sigma) = s.ctx.gamma[rng.gen_range(0..s.ctx.gamma.len())].clone();
        let arg = pilly_typecheck::gen::diverge(&sigma);
        check_lemma(&s.ctx, &s.term, Substitution::Intuitionistic { var: &u, arg: &arg })?;
    }

    #[test]
    fn type_substitution_lemma(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let s = sample(&mut rng, 4);
        if s.ctx.xi.is_empty() {
            return Ok(());
        }
        let a = s.ctx.xi[rng.gen_range(0..s.ctx.xi.len())].clone();
        let (_, sigma) = closed(&mut rng, 0);
        let sigma = Type::lolli(sigma, Type::Unit);
        check_lemma(&s.ctx, &s.term, Substitution::Type { var: &a, arg: &sigma })?;
    }
}

fn check_lemma(ctx: &TermContext, t: &Term, s: Substitution<'_>) -> Result<(), TestCaseError> {
    match check_substitution_lemma(ctx, t, s) {
        Ok(_) => Ok(()),
        Err(e @ LemmaError::Premise(_)) => Err(TestCaseError::fail(format!("generator bug: {e}"))),
        Err(e) => Err(TestCaseError::fail(format!("{e}\n{}", print_term(t)))),
    }
}

#[test]
fn closed_samples_print_and_typecheck() {
    let mut rng = seeded(7);
    for _ in 0..50 {
        let (t, ty) = closed(&mut rng, 6);
        assert_eq!(infer(&TermContext::new(), &t).unwrap().ty, ty, "{}", print_type(&ty));
    }
}
