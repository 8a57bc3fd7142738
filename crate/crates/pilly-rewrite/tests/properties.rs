use pilly_core::{print_term, Term};
use pilly_rewrite::{normalize, step, RewriteConfig};
use pilly_typecheck::gen::sample;
use pilly_typecheck::infer;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn every_step_preserves_the_type(seed in any::<u64>()) {
        let s = sample(&mut StdRng::seed_from_u64(seed), 6);
        let ty = infer(&s.ctx, &s.term).unwrap().ty;
        let mut cur: Term = s.term.clone();
        for _ in 0..2_000 {
            let Some(next) = step(&cur, true) else { break };
            let t = infer(&s.ctx, &next).map_err(|e| {
                TestCaseError::fail(format!("{e}\nbefore: {}\nafter: {}", print_term(&cur), print_term(&next)))
            })?;
            prop_assert_eq!(&t.ty, &ty);
            cur = next;
        }
    }

    #[test]
    fn normalization_is_idempotent_and_deterministic(seed in any::<u64>()) {
        let s = sample(&mut StdRng::seed_from_u64(seed), 6);
        let cfg = RewriteConfig::default();
        let Ok(n) = normalize(&s.term, &cfg) else { return Ok(()) };
        let again = normalize(&n.term, &cfg).unwrap();
        prop_assert_eq!(&again.term, &n.term);
        prop_assert_eq!(again.steps, 0);
        prop_assert_eq!(normalize(&s.term, &cfg).unwrap(), n);
    }

    #[test]
    fn normal_forms_keep_their_type_without_eta(seed in any::<u64>()) {
        let s = sample(&mut StdRng::seed_from_u64(seed), 5);
        let cfg = RewriteConfig { eta: false, ..RewriteConfig::default() };
        let ty = infer(&s.ctx, &s.term).unwrap().ty;
        let n = normalize(&s.term, &cfg).unwrap();
        prop_assert_eq!(infer(&s.ctx, &n.term).unwrap().ty, ty);
    }
}
