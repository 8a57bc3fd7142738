use pilly_core::{Sort, Syntax, Type};
use pilly_encodings::*;
use pilly_functor::{polarity, split_occurrences};

fn v(n: &str) -> Type {
    Type::var(n)
}

/// Rebuilds `omega(tau')` from the single fixed point encodings.
fn composed(var: &str, body: &Type) -> Type {
    let split = split_occurrences(body, var);
    let sig = |a: &Type, b: &Type| {
        split
            .split
            .subst_tys(&[split.negative.clone(), split.positive.clone()], &[a.clone(), b.clone()])
    };
    let omega = |a: &Type| encode_mu("b", &sig(a, &v("b"))).unwrap().defined_type;
    let tau_prime = encode_nu("a", &sig(&omega(&v("a")), &v("a"))).unwrap().defined_type;
    omega(&tau_prime)
}

#[test]
fn rec_is_omega_of_tau_prime() {
    let lazy_list = sum_type(&Type::Unit, &Type::tensor(nat_type(), v("a")));
    for body in [v("a"), lazy_list, Type::lolli(v("a"), v("a"))] {
        let b = encode_rec("a", &body).unwrap();
        assert_eq!(b.defined_type, composed("a", &body));
    }
}

#[test]
fn parameterised_list_is_positive_in_its_parameter() {
    let params = RecParams {
        neg: vec![],
        pos: vec!["b1".into()],
        neg_var: "a".into(),
        pos_var: "b".into(),
        body: Type::tensor(v("b1"), v("b")),
    };
    let b = encode_rec_with_params(&params).unwrap();
    let p = polarity(&b.defined_type, "b1");
    assert!(p.positive && !p.negative);
    assert!(b.verify(&Default::default()).all_ok(), "{:?}", b.verify(&Default::default()).failures());
}

#[test]
fn swapped_type_reverses_parameter_polarities() {
    let params = RecParams {
        neg: vec!["a1".into()],
        pos: vec!["b1".into()],
        neg_var: "a".into(),
        pos_var: "b".into(),
        body: Type::lolli(Type::tensor(v("a1"), v("a")), Type::tensor(v("b1"), v("b"))),
    };
    let b = encode_rec_with_params(&params).unwrap();
    let tau = &b.defined_type;
    assert!(!polarity(tau, "a1").positive && polarity(tau, "a1").negative);
    assert!(polarity(tau, "b1").positive && !polarity(tau, "b1").negative);
    let out = b.combinator("out").unwrap();
    let Type::Forall(_, inner) = &out.ty else { panic!() };
    let Type::Forall(_, inner) = &**inner else { panic!() };
    let Type::Lolli(tau_prime, _) = &**inner else { panic!() };
    let tau_prime = tau_prime.open(Sort::Ty, &["a1".to_string(), "b1".to_string()]);
    assert!(polarity(&tau_prime, "a1").positive && !polarity(&tau_prime, "a1").negative);
    assert!(polarity(&tau_prime, "b1").negative && !polarity(&tau_prime, "b1").positive);
    let report = b.verify(&Default::default());
    assert!(report.all_ok(), "{:?}", report.failures());
}

#[test]
fn no_parameters_matches_plain_rec() {
    let body = Type::lolli(v("a"), v("a"));
    let plain = encode_rec("a", &body).unwrap();
    let split = split_occurrences(&body, "a");
    let params = RecParams {
        neg: vec![],
        pos: vec![],
        neg_var: split.negative,
        pos_var: split.positive,
        body: split.split,
    };
    let with = encode_rec_with_params(&params).unwrap();
    assert_eq!(plain.defined_type, with.defined_type);
    let names = |b: &EncodingBundle| b.combinators.iter().map(|c| (c.name.clone(), c.ty.clone())).collect::<Vec<_>>();
    assert_eq!(names(&plain), names(&with));
}

#[test]
fn declared_polarity_is_enforced() {
    let params = RecParams {
        neg: vec!["a1".into()],
        pos: vec![],
        neg_var: "a".into(),
        pos_var: "b".into(),
        body: Type::tensor(v("a1"), v("b")),
    };
    let err = encode_rec_with_params(&params).unwrap_err();
    assert_eq!(
        err,
        EncodingError::PolarityViolation {
            var: "a1".into(),
            found: "positively",
            ty: "a1 * b".into()
        }
    );
}

#[test]
fn fixed_points_need_positive_bodies() {
    for res in [encode_mu("a", &Type::lolli(v("a"), Type::Unit)), encode_nu("a", &Type::lolli(v("a"), Type::Unit))] {
        let err = res.unwrap_err();
        assert_eq!(err.code(), "PolarityViolation");
    }
}

#[test]
fn mixed_rule_mentions_both_relations() {
    let b = encode_rec("a", &Type::lolli(v("a"), v("a"))).unwrap();
    let law = b.schema_laws.iter().find(|s| s.name == "mixed-induction").unwrap();
    let text = pilly_core::print_prop(&law.prop);
    assert!(text.contains("AdmRel") && text.contains("Rel("), "{text}");
    assert!(b.check_schema_laws().iter().all(|(_, r)| r.is_ok()));
}
