use pilly_core::{print_term, TermContext, Type};
use pilly_functor::{action_type, apply_action, check_functor_laws, synthesize_m, Arrow};
use pilly_parser::parse_type;
use pilly_rewrite::{normalize, EqResult, RewriteConfig};
use pilly_typecheck::{check, infer};

const CATALOG: &[&str] = &["b", "!b", "b * b", "a -o b", "all c. b * c"];

#[test]
fn catalog_terms_have_the_action_type() {
    for src in CATALOG {
        let ty = parse_type(src).unwrap();
        let m = synthesize_m(&ty, "a", "b").unwrap();
        let claim = action_type(&ty, "a", "b");
        if let Err(e) = check(&TermContext::new(), &m, &claim) {
            panic!("{src}: {e}\n{}", print_term(&m));
        }
    }
}

#[test]
fn catalog_laws() {
    let cfg = RewriteConfig::default();
    for src in CATALOG {
        let ty = parse_type(src).unwrap();
        let laws = check_functor_laws(&ty, "a", "b", &cfg).unwrap();
        assert!(laws.identity.is_equal(), "{src}: {:?}", laws.identity);
        assert!(laws.composition.is_equal(), "{src}: {:?}", laws.composition);
    }
}

#[test]
fn identity_action_on_a_pair_normalizes_to_identity() {
    let ty = parse_type("b * b").unwrap();
    let t = apply_action(
        &ty,
        "a",
        "b",
        &Arrow::identity(Type::var("a")),
        &Arrow::identity(Type::var("b")),
    )
    .unwrap();
    let eta_off = RewriteConfig { eta: false, ..RewriteConfig::default() };
    let n = normalize(&t, &eta_off).unwrap().term;
    assert_eq!(n, pilly_parser::parse_term("fn z:b * b. let x (*) y : b * b = z in x (*) y").unwrap());
    let n = normalize(&t, &RewriteConfig::default()).unwrap().term;
    assert_eq!(n, pilly_core::build::id(ty));
}

#[test]
fn covariant_bang_action() {
    let ty = parse_type("!b").unwrap();
    let ctx = TermContext::new()
        .with_ty_var("t")
        .with_ty_var("u")
        .with_intuitionistic("g", parse_type("t -o u").unwrap());
    let t = apply_action(
        &ty,
        "a",
        "b",
        &Arrow::identity(Type::var("a")),
        &Arrow::named("g", Type::var("t"), Type::var("u")),
    )
    .unwrap();
    let ctx = ctx.with_ty_var("a");
    assert_eq!(infer(&ctx, &t).unwrap().ty, parse_type("!t -o !u").unwrap());
}

#[test]
fn identity_on_base_variable_is_pure_beta() {
    let laws = check_functor_laws(&Type::var("b"), "a", "b", &RewriteConfig { eta: false, ..RewriteConfig::default() }).unwrap();
    assert!(matches!(laws.identity, EqResult::Equal(_)));
    assert!(matches!(laws.composition, EqResult::Equal(_)));
}
