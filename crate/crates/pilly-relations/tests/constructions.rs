use pilly_core::build::{forall, rel_var};
use pilly_core::{Flavor, RelContext, Term, Type};
use pilly_parser::{parse_relation, parse_term, parse_type};
use pilly_relations::*;

fn ty(s: &str) -> Type {
    parse_type(s).unwrap()
}

fn ctx() -> RelContext {
    ["a", "b", "c", "d"]
        .iter()
        .fold(RelContext::new(), |c, v| c.with_ty_var(*v))
        .with_rel("P", ty("a"), ty("b"), Flavor::Rel)
        .with_rel("Q", ty("c"), ty("d"), Flavor::Rel)
        .with_rel("R", ty("a"), ty("a"), Flavor::AdmRel)
}

fn p() -> TypedRel {
    TypedRel::var("P", ty("a"), ty("b"))
}

fn q() -> TypedRel {
    TypedRel::var("Q", ty("c"), ty("d"))
}

#[test]
fn graph_of_identity_is_equality() {
    let r = graph(&parse_term("fn z:I. z").unwrap(), &Type::Unit, &Type::Unit);
    assert_eq!(r.rel, parse_relation("(x:I, y:I). x =_{I} y").unwrap());
    assert_eq!(r, eq(&Type::Unit));
}

#[test]
fn lolli_of_equalities_has_function_domain() {
    let r = lolli(&eq(&ty("a")), &eq(&ty("b")));
    assert_eq!(r.dom, ty("a -o b"));
    assert_eq!(relation_type(&ctx(), &r.rel).unwrap(), (ty("a -o b"), ty("a -o b")));
}

#[test]
fn tensor_matches_written_out_form() {
    // The written-out form with the argument types of t and t' as a -o c -o a1
    // and b -o d -o b1.
    let written = parse_relation(
        "(x:a * c, y:b * d). all a1. all b1. all S : AdmRel(a1, b1). \
         all t:a -o c -o a1. all t2:b -o d -o b1. \
         ((f:a -o c -o a1, g:b -o d -o b1). all x1:a. all y1:b. P(x1, y1) => \
            ((f:c -o a1, g:d -o b1). all x2:c. all y2:d. Q(x2, y2) => S(f x2, g y2))(f x1, g y1))(t, t2) \
         => S(let x' (*) x'' : a * c = x in t x' x'', let y' (*) y'' : b * d = y in t2 y' y'')",
    )
    .unwrap();
    let built = tensor(&p(), &q());
    assert_eq!(normalize_relation(&written), built.rel);
    assert_eq!(built.dom, ty("a * c"));
    assert_eq!(built.cod, ty("b * d"));
}

#[test]
fn unit_relation_matches_written_out_form() {
    let written = parse_relation(
        "(x:I, y:I). all a. all b. all S : AdmRel(a, b). all z:a. all w:b. S(z, w) => \
         S(let <> = x in z, let <> = y in w)",
    )
    .unwrap();
    assert_eq!(unit().rel, written);
}

#[test]
fn type_rel_unfolds_structurally() {
    let a = vec!["a".to_string()];
    assert_eq!(type_rel(&a, &ty("a -o a"), &[p()]).unwrap(), lolli(&p(), &p()));
    assert_eq!(type_rel(&[], &Type::Unit, &[]).unwrap(), unit());
    assert_eq!(type_rel(&a, &ty("a"), &[p()]).unwrap(), p());
    assert_eq!(type_rel(&a, &ty("!a"), &[p()]).unwrap(), bang(&p()));
    let b = TypedRel::var("S", ty("b"), ty("b'"));
    let expected = forall_rel("b", "b'", "S", &b);
    assert_eq!(type_rel(&[], &forall("b", ty("b")), &[]).unwrap(), expected);
}

#[test]
fn type_rel_rejects_arity_and_stray_variables() {
    assert_eq!(
        type_rel(&["a".into()], &ty("a"), &[]).unwrap_err(),
        RelError::Arity { expected: 1, found: 0 }
    );
    assert!(matches!(type_rel(&[], &ty("a"), &[]), Err(RelError::Ill(_))));
}

#[test]
fn every_construction_is_well_formed() {
    let c = ctx();
    let f = parse_term("fn z:a. z").unwrap();
    let cases = vec![
        eq(&ty("a")),
        graph(&f, &ty("a"), &ty("a")),
        reindex(&p(), &f, &ty("a"), &parse_term("fn z:b. z").unwrap(), &ty("b")),
        lolli(&p(), &q()),
        arrow(&p(), &q()),
        tensor(&p(), &q()),
        unit(),
        bang(&p()),
        closure(&p()),
        forall_rel("e", "e'", "S", &lolli(&TypedRel::var("S", ty("e"), ty("e'")), &p())),
    ];
    for r in cases {
        assert_eq!(relation_type(&c, &r.rel).unwrap(), (r.dom.clone(), r.cod.clone()), "{r:?}");
    }
    check_prop(&c, &bang_pairs(&p())).unwrap();
    check_prop(&c, &closure_contains(&p())).unwrap();
}

#[test]
fn ill_formed_relations_are_rejected() {
    let c = ctx();
    assert!(matches!(
        relation_type(&c, &rel_var("Nope")),
        Err(RelError::UnboundRelation(n)) if n == "Nope"
    ));
    let bad = parse_relation("(x:a, y:b). P(y, x)").unwrap();
    assert!(matches!(relation_type(&c, &bad), Err(RelError::Mismatch { .. })));
    let app = pilly_core::Prop::RelApp(rel_var("P"), Term::Star, Term::Star);
    assert!(check_prop(&c, &app).is_err());
}

#[test]
fn unfolding_reaches_constructions() {
    let c = ctx();
    let opaque = parse_relation("(a -o a)[R]").unwrap();
    let r = TypedRel::var("R", ty("a"), ty("a"));
    assert_eq!(unfold_relation(&c, &opaque).unwrap(), lolli(&r, &r).rel);
}
