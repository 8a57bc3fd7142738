use pilly_core::gen::{self, Scope};
use pilly_core::{print_prop, print_relation, print_term, print_type, Syntax};
use pilly_parser::{parse_prop, parse_relation, parse_term, parse_type};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn types_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let t = gen::ty(&mut rng, Scope::default(), 5);
        let s = print_type(&t);
        prop_assert_eq!(parse_type(&s).map_err(|e| TestCaseError::fail(format!("{s}: {e}")))?, t);
    }

    #[test]
    fn terms_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let t = gen::term(&mut rng, Scope::default(), 6);
        let s = print_term(&t);
        prop_assert_eq!(parse_term(&s).map_err(|e| TestCaseError::fail(format!("{s}: {e}")))?, t);
    }

    #[test]
    fn relations_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let r = gen::relation(&mut rng, Scope::default(), 4);
        let s = print_relation(&r);
        prop_assert_eq!(parse_relation(&s).map_err(|e| TestCaseError::fail(format!("{s}: {e}")))?, r);
    }

    #[test]
    fn props_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = gen::prop(&mut rng, Scope::default(), 4);
        let s = print_prop(&p);
        let back = parse_prop(&s).map_err(|e| TestCaseError::fail(format!("{s}: {e}")))?;
        prop_assert!(back.is_locally_closed());
        prop_assert_eq!(back, p);
    }
}
