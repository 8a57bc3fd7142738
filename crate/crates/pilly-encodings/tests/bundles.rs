use pilly_core::Type;
use pilly_encodings::*;
use pilly_rewrite::RewriteConfig;

fn assert_verified(b: &EncodingBundle) {
    let report = b.verify(&RewriteConfig::default());
    assert!(report.all_ok(), "{}: {:#?}", b.name, report.failures());
}

fn a() -> Type {
    Type::var("a")
}

#[test]
fn iso_self_at_unit_nat_and_zero() {
    for s in [Type::Unit, nat_type(), zero_type()] {
        assert_verified(&encode_iso_self(&s));
    }
}

#[test]
fn tensor_unit_zero_one() {
    assert_verified(&encode_tensor(&nat_type(), &Type::Unit));
    assert_verified(&encode_tensor(&Type::Unit, &Type::Unit));
    assert_verified(&encode_unit());
    assert_verified(&encode_zero());
    assert_verified(&encode_one());
}

#[test]
fn sum_and_product() {
    assert_verified(&encode_sum(&nat_type(), &Type::Unit));
    assert_verified(&encode_product(&nat_type(), &Type::Unit));
}

#[test]
fn nat_and_exists() {
    assert_verified(&encode_nat());
    assert_verified(&encode_exists("a", &Type::tensor(a(), nat_type())));
}

#[test]
fn mu_and_nu() {
    for body in [sum_type(&Type::Unit, &a()), Type::tensor(nat_type(), a()), a()] {
        assert_verified(&encode_mu("a", &body).unwrap());
        assert_verified(&encode_nu("a", &body).unwrap());
    }
}

#[test]
fn rec_instances() {
    let lazy_list = sum_type(&Type::Unit, &Type::tensor(nat_type(), a()));
    for body in [a(), lazy_list, Type::lolli(a(), a())] {
        let b = encode_rec("a", &body).unwrap();
        assert_verified(&b);
    }
}
