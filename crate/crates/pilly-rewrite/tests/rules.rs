use pilly_core::{Syntax, Term, TermContext, Type};
use pilly_parser::parse_term;
use pilly_rewrite::{equal, equal_typed, normalize, step_with_rule, unroll_y, EqResult, RewriteConfig, RewriteError, Rule, Unknown};

fn nf(src: &str) -> Term {
    normalize(&parse_term(src).unwrap(), &RewriteConfig::default()).unwrap().term
}

fn t(src: &str) -> Term {
    parse_term(src).unwrap()
}

#[test]
fn beta_star() {
    assert_eq!(step_with_rule(&t("let <> = <> in u"), true), Some((Rule::BetaStar, t("u"))));
}

#[test]
fn beta_tensor_and_bang() {
    assert_eq!(nf("let x (*) y = a (*) b in y (*) x"), t("b (*) a"));
    assert_eq!(nf("let !x = !a in x (*) x"), t("a (*) a"));
    assert_eq!(nf("(/\\a. fn x:a. x) [I] <>"), Term::Star);
}

#[test]
fn intuitionistic_lambda_beta() {
    assert_eq!(nf("(lam x:I. x (*) x) !s"), t("s (*) s"));
}

#[test]
fn eta_rules() {
    assert_eq!(nf("fn x:I. f x"), t("f"));
    assert_eq!(nf("/\\a. f [a]"), t("f"));
    assert_eq!(nf("let <> = s in <>"), t("s"));
    assert_eq!(nf("let x (*) y = s in x (*) y"), t("s"));
    assert_eq!(nf("let !x = s in !x"), t("s"));
}

#[test]
fn lets_float_outwards() {
    assert_eq!(nf("f (let <> = s in u)"), t("let <> = s in f u"));
    assert_eq!(nf("(let x (*) y = p in x) y"), t("let x (*) y' = p in x y"));
    assert_eq!(nf("let !z = (let !x = s in x) in z"), t("let !x = s in let !z = x in z"));
}

#[test]
fn lets_do_not_leave_a_bang() {
    assert_eq!(nf("!(let <> = s in u)"), t("!(let <> = s in u)"));
}

#[test]
fn fixed_points_are_not_unrolled_by_default() {
    let y = t("Y [I] !f");
    assert_eq!(nf("Y [I] !f"), y);
    assert_eq!(unroll_y(&y).unwrap(), t("f !(Y [I] !f)"));
}

#[test]
fn omega_unrolls_once() {
    let omega = t("Y [s -o (all a. a)] !(fn z:!(s -o (all a. a)). let !w = z in w)");
    let unrolled = unroll_y(&omega).unwrap();
    match &unrolled {
        Term::App(_, arg) => assert_eq!(**arg, Term::bang(omega.clone())),
        other => panic!("{other:?}"),
    }
    assert_eq!(normalize(&unrolled, &RewriteConfig::default()).unwrap().term, omega);
}

#[test]
fn equality_is_three_valued() {
    let cfg = RewriteConfig::default();
    assert!(equal(&t("(fn x:I. x) u"), &t("u"), &cfg).is_equal());
    assert!(matches!(equal(&t("u"), &t("v"), &cfg), EqResult::NotEqual(..)));
    let fix = t("Y [I] !(fn z:!I. let !w = z in w)");
    assert_eq!(equal(&fix, &Term::Star, &cfg), EqResult::Unknown(Unknown::YBudget));
    let with_budget = RewriteConfig { y_unroll_budget: 3, ..cfg.clone() };
    let unrolled = unroll_y(&fix).unwrap();
    assert!(equal(&fix, &unrolled, &with_budget).is_equal());
    let starving = RewriteConfig { fuel: 1, ..cfg };
    assert_eq!(
        equal(&t("(fn x:I. x) ((fn x:I. x) u)"), &t("v"), &starving),
        EqResult::Unknown(Unknown::Fuel)
    );
}

#[test]
fn fuel_exhaustion_reports_last_term() {
    let cfg = RewriteConfig { fuel: 1, ..RewriteConfig::default() };
    match normalize(&t("(fn x:I. x) ((fn x:I. x) u)"), &cfg) {
        Err(RewriteError::FuelExhausted { steps, last }) => {
            assert_eq!(steps, 1);
            assert_eq!(last, t("(fn x:I. x) u"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn typed_equality_rejects_different_types() {
    let ctx = TermContext::new().with_linear("u", Type::Unit);
    assert!(matches!(
        equal_typed(&ctx, &t("u"), &t("u (*) u"), &RewriteConfig::default()),
        Err(RewriteError::TypeMismatch { .. })
    ));
    assert!(equal_typed(&ctx, &t("u"), &t("(fn x:I. x) u"), &RewriteConfig::default())
        .unwrap()
        .is_equal());
    assert!(t("u").is_locally_closed());
}
