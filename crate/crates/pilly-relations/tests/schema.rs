use pilly_core::build::{all_tm, all_tys, type_rel as opaque, var};
use pilly_core::fresh::fresh;
use pilly_core::{y_type, Prop, RelContext, Term, TermContext, Type};
use pilly_parser::{parse_term, parse_type};
use pilly_relations::*;

fn ty(s: &str) -> Type {
    parse_type(s).unwrap()
}

#[test]
fn parametricity_of_y_is_the_y_axiom() {
    let ctx = RelContext::new();
    let inst = parametricity(&y_type(), Some(&Term::Y)).unwrap();
    let axiom = Prop::RelApp(opaque(&[], y_type(), vec![]), Term::Y, Term::Y);
    check_prop(&ctx, &inst).unwrap();
    check_prop(&ctx, &axiom).unwrap();
    assert_eq!(unfold_prop(&ctx, &inst).unwrap(), unfold_prop(&ctx, &axiom).unwrap());
}

#[test]
fn lrl_of_y_is_the_y_axiom() {
    let inst = lrl(&TermContext::new(), &Term::Y).unwrap();
    assert_eq!(inst, Prop::RelApp(opaque(&[], y_type(), vec![]), Term::Y, Term::Y));
}

#[test]
fn identity_extension_at_a_variable() {
    let inst = identity_extension(&ty("a")).unwrap();
    check_prop(&RelContext::new(), &inst).unwrap();
    let Prop::Quant(_, _, body) = &inst else { panic!("{inst:?}") };
    assert!(matches!(**body, Prop::Quant(..)));
}

#[test]
fn parametricity_is_the_polymorphic_case_of_identity_extension() {
    // For ty = all b. s, the lifted side of identity extension unfolds to the
    // closure over b; applied to (u, u) it is the parametricity instance.
    let t = ty("all b. (b -o a) -o b");
    let ie = identity_extension(&t).unwrap();
    let par = parametricity(&t, None).unwrap();
    let ctx = RelContext::new();
    check_prop(&ctx, &ie).unwrap();
    check_prop(&ctx, &par).unwrap();

    let a = vec!["a".to_string()];
    let lifted = type_rel(&a, &t, &[eq(&Type::var("a"))]).unwrap();
    let u = fresh("u");
    let applied = normalize_prop(&lifted.apply(var(&u), var(&u)));
    let expected = all_tys(&a, all_tm(&u, t.clone(), applied));
    assert_eq!(unfold_prop(&ctx, &par).unwrap(), expected);
}

#[test]
fn lrl_for_open_terms_is_well_formed() {
    let ctx = TermContext::new()
        .with_ty_var("a")
        .with_linear("x", ty("a"))
        .with_intuitionistic("f", ty("a -o a"));
    let t = parse_term("f x").unwrap();
    let p = lrl(&ctx, &t).unwrap();
    check_prop(&RelContext::new(), &p).unwrap();
    let text = pilly_core::print_prop(&p);
    assert!(text.starts_with("all a. all a'."), "{text}");
}

#[test]
fn identity_lrl_and_schemas_on_numerals() {
    let n = ty("all a. (a -o a) -> a -o a");
    let ctx = RelContext::new();
    check_prop(&ctx, &parametricity(&n, None).unwrap()).unwrap();
    check_prop(&ctx, &identity_extension(&n).unwrap()).unwrap();
    let succ = parse_term(
        "fn n:all a. (a -o a) -> a -o a. /\\a. lam f:a -o a. fn x:a. f (n [a] !f x)",
    )
    .unwrap();
    check_prop(&ctx, &lrl(&TermContext::new(), &succ).unwrap()).unwrap();
    let id = parse_term("/\\a. fn x:a. x").unwrap();
    check_prop(&ctx, &lrl(&TermContext::new(), &id).unwrap()).unwrap();
}

#[test]
fn parametricity_needs_a_polymorphic_type() {
    assert!(parametricity(&ty("I"), None).is_err());
    assert!(parametricity(&y_type(), Some(&Term::Star)).is_err());
}
