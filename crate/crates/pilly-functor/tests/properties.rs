use pilly_core::gen::{ty, Scope};
use pilly_core::{print_term, print_type, Syntax, TermContext, Type, Var};
use pilly_functor::{action_type, polarity, split_occurrences, synthesize_m};
use pilly_typecheck::check;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Signs of every occurrence of `var`, found by listing paths from the root.
fn occurrence_signs(t: &Type, var: &str) -> Vec<bool> {
    let mut stack = vec![(t, 0usize)];
    let mut out = Vec::new();
    while let Some((t, flips)) = stack.pop() {
        match t {
            Type::Var(Var::Free(n)) if n == var => out.push(flips % 2 == 0),
            Type::Var(_) | Type::Unit => {}
            Type::Lolli(a, b) => {
                stack.push((a, flips + 1));
                stack.push((b, flips));
            }
            Type::Tensor(a, b) => {
                stack.push((a, flips));
                stack.push((b, flips));
            }
            Type::Bang(a) | Type::Forall(_, a) => stack.push((a, flips)),
        }
    }
    out
}

fn random_type(seed: u64, depth: u32) -> Type {
    ty(&mut StdRng::seed_from_u64(seed), Scope::default(), depth)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn polarity_matches_occurrence_walk(seed in any::<u64>()) {
        let t = random_type(seed, 5);
        for v in ["p", "q", "a"] {
            let signs = occurrence_signs(&t, v);
            let p = polarity(&t, v);
            prop_assert_eq!(p.positive, signs.iter().any(|s| *s));
            prop_assert_eq!(p.negative, signs.iter().any(|s| !*s));
        }
    }

    #[test]
    fn split_rejoins(seed in any::<u64>()) {
        let t = random_type(seed, 5);
        let s = split_occurrences(&t, "p");
        prop_assert_eq!(s.rejoin("p"), t);
        prop_assert!(!polarity(&s.split, &s.negative).positive);
        prop_assert!(!polarity(&s.split, &s.positive).negative);
    }

    #[test]
    fn synthesized_actions_typecheck(seed in any::<u64>()) {
        let t = random_type(seed, 4);
        let s = split_occurrences(&t, "p");
        let m = synthesize_m(&s.split, &s.negative, &s.positive).unwrap();
        let claim = action_type(&s.split, &s.negative, &s.positive);
        let mut xi: Vec<String> = claim.free_names(pilly_core::Sort::Ty).into_iter().collect();
        xi.sort();
        let ctx = TermContext { xi, ..TermContext::default() };
        check(&ctx, &m, &claim).map_err(|e| {
            TestCaseError::fail(format!("{e}\n{}\n{}", print_type(&s.split), print_term(&m)))
        })?;
    }
}
