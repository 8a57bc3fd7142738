use pilly_core::gen::closed_ty;
use pilly_core::{Sort, Syntax, Type};
use pilly_encodings::*;
use pilly_functor::polarity;
use pilly_rewrite::RewriteConfig;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn closed(seed: u64, depth: u32) -> Type {
    closed_ty(&mut StdRng::seed_from_u64(seed), 0, depth)
}

fn over_a(seed: u64, depth: u32) -> Type {
    closed_ty(&mut StdRng::seed_from_u64(seed), 1, depth).open(Sort::Ty, &["a".to_string()])
}

fn verified(b: &EncodingBundle) -> Result<(), TestCaseError> {
    let report = b.verify(&RewriteConfig::default());
    prop_assert!(report.all_ok(), "{}: {:?}\n{}", b.name, report.failures(), b);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_and_sums_hold_at_any_type(s in any::<u64>(), t in any::<u64>()) {
        let (s, t) = (closed(s, 3), closed(t, 3));
        verified(&encode_iso_self(&s))?;
        verified(&encode_tensor(&s, &t))?;
        verified(&encode_sum(&s, &t))?;
        verified(&encode_product(&s, &t))?;
    }

    #[test]
    fn existentials_hold_at_any_body(seed in any::<u64>()) {
        verified(&encode_exists("a", &over_a(seed, 3)))?;
    }

    #[test]
    fn fixed_points_hold_for_positive_bodies(seed in any::<u64>()) {
        let body = over_a(seed, 3);
        prop_assume!(!polarity(&body, "a").negative);
        verified(&encode_mu("a", &body).unwrap())?;
        verified(&encode_nu("a", &body).unwrap())?;
    }

    #[test]
    fn negative_bodies_are_rejected(seed in any::<u64>()) {
        let body = over_a(seed, 3);
        prop_assume!(polarity(&body, "a").negative);
        prop_assert_eq!(encode_mu("a", &body).unwrap_err().code(), "PolarityViolation");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn recursive_types_build_for_any_body(seed in any::<u64>()) {
        let body = over_a(seed, 2);
        let b = encode_rec("a", &body).unwrap();
        let report = b.verify(&RewriteConfig::default());
        prop_assert!(report.all_ok(), "{:?}", report.failures());
    }
}
