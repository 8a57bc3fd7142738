use pilly_core::build::rel_var;
use pilly_core::{Flavor, RelContext, Type};
use pilly_parser::{parse_relation, parse_term, parse_type};
use pilly_relations::*;

fn ty(s: &str) -> Type {
    parse_type(s).unwrap()
}

fn ctx() -> RelContext {
    RelContext::new()
        .with_ty_var("a")
        .with_ty_var("b")
        .with_term("f", ty("a -o b"))
        .with_rel("A", ty("a"), ty("b"), Flavor::AdmRel)
        .with_rel("R", ty("a"), ty("b"), Flavor::Rel)
}

fn adm() -> TypedRel {
    TypedRel::var("A", ty("a"), ty("b"))
}

fn raw() -> TypedRel {
    TypedRel::var("R", ty("a"), ty("b"))
}

#[test]
fn equality_is_one_step() {
    let d = derive_admissible(&ctx(), &eq(&ty("a")).rel).unwrap();
    assert_eq!(d.rule, AdmRule::Eq);
    assert_eq!(d.size(), 1);
}

#[test]
fn graph_goes_through_reindexing_of_equality() {
    let g = graph(&parse_term("f").unwrap(), &ty("a"), &ty("b"));
    let d = derive_admissible(&ctx(), &g.rel).unwrap();
    assert_eq!(d.rules(), vec![AdmRule::Equiv(Equivalence::Beta), AdmRule::Reindex, AdmRule::Eq]);
}

#[test]
fn function_space_into_admissible_is_admissible() {
    let c = ctx();
    let d = derive_admissible(&c, &lolli(&raw(), &adm()).rel).unwrap();
    assert!(d.rules().contains(&AdmRule::Implies));
    assert!(is_admissible(&c, &arrow(&raw(), &adm()).rel));
}

#[test]
fn closure_of_raw_relation_is_admissible() {
    let d = derive_admissible(&ctx(), &closure(&raw()).rel).unwrap();
    assert!(d.rules().contains(&AdmRule::ForallAdmRel));
    assert!(d.to_string().contains("[adm-var]"));
}

#[test]
fn type_rel_over_admissible_arguments() {
    let c = ctx().with_rel("B", ty("a"), ty("a"), Flavor::AdmRel);
    let r = parse_relation("(a -o a * a)[B]").unwrap();
    assert_eq!(derive_admissible(&c, &r).unwrap().rule, AdmRule::TypeRel);
    let c = c.with_rel("S", ty("a"), ty("a"), Flavor::Rel);
    let r = parse_relation("(!a -o a)[S]").unwrap();
    assert!(derive_admissible(&c, &r).is_err());
    let r = parse_relation("(!a)[S]").unwrap();
    assert_eq!(derive_admissible(&c, &r).unwrap().rule, AdmRule::Equiv(Equivalence::Unfold));
}

#[test]
fn raw_relations_are_not_derivable() {
    let c = ctx();
    let cases = [
        rel_var("R"),
        parse_relation("(x:a, y:b). R(x, y)").unwrap(),
        parse_relation("(x:b, y:a). R(y, x)").unwrap(),
        parse_relation("(x:a, y:a -o b). R(x, y x)").unwrap(),
        lolli(&adm(), &raw()).rel,
    ];
    for r in cases {
        assert!(
            matches!(derive_admissible(&c, &r), Err(AdmError::NotDerivable { .. })),
            "{r:?}"
        );
    }
}

#[test]
fn rules_outside_the_closure_fail() {
    let c = ctx();
    for src in [
        "(x:a, y:b). A(x, y) \\/ A(x, y)",
        "(x:a, y:b). F",
        "(x:a, y:b). A(x, y) => A(x, y)",
        "(x:a, y:b). ex z:a. A(z, y)",
        "(x:a, y:b). A(x, f x)",
    ] {
        let r = parse_relation(src).unwrap();
        assert!(
            matches!(derive_admissible(&c, &r), Err(AdmError::NotDerivable { .. })),
            "{src}"
        );
    }
}

#[test]
fn ill_formed_judgements_are_errors() {
    let r = parse_relation("(x:a, y:b). Missing(x, y)").unwrap();
    assert!(matches!(derive_admissible(&ctx(), &r), Err(AdmError::IllFormed(_))));
}
