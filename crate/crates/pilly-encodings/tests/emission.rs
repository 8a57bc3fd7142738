use pilly_core::{Term, TermContext, Type};
use pilly_encodings::*;
use pilly_parser::{parse_file, DeclKind, Directive};
use pilly_rewrite::{equal_typed, normalize, EqResult, RewriteConfig};
use pilly_typecheck::check;

fn catalog() -> Vec<EncodingBundle> {
    let a = || Type::var("a");
    vec![
        encode_iso_self(&Type::Unit),
        encode_iso_self(&nat_type()),
        encode_tensor(&nat_type(), &Type::Unit),
        encode_unit(),
        encode_zero(),
        encode_one(),
        encode_sum(&nat_type(), &Type::Unit),
        encode_product(&nat_type(), &Type::Unit),
        encode_nat(),
        encode_exists("a", &Type::tensor(a(), nat_type())),
        encode_mu("a", &sum_type(&Type::Unit, &a())).unwrap(),
        encode_nu("a", &Type::tensor(nat_type(), a())).unwrap(),
        encode_rec("a", &Type::lolli(a(), a())).unwrap(),
    ]
}

#[test]
fn emitted_files_reparse_and_hold() {
    let cfg = RewriteConfig::default();
    for b in catalog() {
        let src = b.to_pilly().unwrap();
        let file = parse_file(&src).unwrap_or_else(|e| panic!("{}: {e}\n{src}", b.name));
        let mut terms = 0;
        for d in &file.decls {
            match &d.kind {
                DeclKind::Term { name, claim: Some(claim), body } => {
                    check(&TermContext::new(), body, claim).unwrap_or_else(|e| panic!("{}/{name}: {e}", b.name));
                    terms += 1;
                }
                DeclKind::Directive(Directive::Equal(l, r)) => {
                    let res = equal_typed(&TermContext::new(), l, r, &cfg).unwrap();
                    assert!(res.is_equal(), "{}: {res:?}", b.name);
                }
                _ => {}
            }
        }
        assert_eq!(terms, b.combinators.len());
        assert_eq!(file.directives().count(), b.beta_laws.len());
    }
}

#[test]
fn open_bundles_are_not_emitted() {
    let err = encode_iso_self(&Type::var("q")).to_pilly().unwrap_err();
    assert_eq!(err, EncodingError::OpenBundle("iso-self".into()));
}

#[test]
fn unit_maps_star_to_identity() {
    let b = encode_unit();
    let f_star = b.resolve(&Term::app(Term::var("f"), Term::Star));
    let nf = normalize(&f_star, &RewriteConfig::default()).unwrap().term;
    assert_eq!(nf, b.combinator("id").unwrap().term);
}

#[test]
fn iterating_once_applies_the_step() {
    let b = encode_nat();
    let ctx = TermContext::new()
        .with_ty_var("s")
        .with_intuitionistic("a", Type::var("s"))
        .with_intuitionistic("b", Type::lolli(Type::var("s"), Type::var("s")));
    let one = Term::app(Term::var("succ"), Term::var("zero"));
    let lhs = Term::apps(
        Term::ty_app(Term::var("iter"), Type::var("s")),
        [Term::var("a"), Term::bang(Term::var("b")), one],
    );
    let rhs = Term::app(Term::var("b"), Term::var("a"));
    let res = equal_typed(&ctx, &b.resolve(&lhs), &rhs, &RewriteConfig::default()).unwrap();
    assert!(res.is_equal(), "{res:?}");
    let two = Term::app(Term::var("succ"), Term::app(Term::var("succ"), Term::var("zero")));
    check(&TermContext::new(), &b.resolve(&two), &nat_type()).unwrap();
}

#[test]
fn hat_after_tilde_is_not_closed_by_rewriting() {
    let b = encode_exists("a", &Type::tensor(Type::var("a"), nat_type()));
    let e = b.defined_type.clone();
    let ctx = TermContext::new()
        .with_ty_var("t")
        .with_intuitionistic("s", Type::lolli(e, Type::var("t")));
    let at_t = |n: &str| Term::ty_app(Term::var(n), Type::var("t"));
    let lhs = Term::app(at_t("hat"), Term::app(at_t("tilde"), Term::var("s")));
    let res = equal_typed(&ctx, &b.resolve(&lhs), &Term::var("s"), &RewriteConfig::default()).unwrap();
    assert!(matches!(res, EqResult::NotEqual(..)), "{res:?}");
}

#[test]
fn injections_have_their_types() {
    let b = encode_sum(&nat_type(), &Type::Unit);
    let inl = b.combinator("inl").unwrap();
    assert_eq!(inl.ty, Type::lolli(nat_type(), sum_type(&nat_type(), &Type::Unit)));
    let pi = encode_product(&nat_type(), &Type::Unit);
    assert_eq!(
        pi.combinator("fst").unwrap().ty,
        Type::lolli(product_type(&nat_type(), &Type::Unit), nat_type())
    );
}

#[test]
fn omega_inhabits_every_map_into_zero() {
    let b = encode_one();
    let omega = &b.combinator("omega").unwrap().term;
    for s in [Type::Unit, nat_type()] {
        let inst = Term::ty_app(omega.clone(), s.clone());
        check(&TermContext::new(), &inst, &Type::lolli(s, zero_type())).unwrap();
    }
}
