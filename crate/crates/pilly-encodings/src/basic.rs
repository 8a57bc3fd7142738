use pilly_core::build::{all_tm, all_ty, forall, id, ilam, lam, let_star, let_tensor, ty_lam, var};
use pilly_core::fresh::fresh;
use pilly_core::{Prop, Sort, Syntax, Term, TermContext, Type};

use crate::types::zero_type;
use crate::EncodingBundle;

pub(crate) fn free_ty_vars(tys: &[&Type]) -> Vec<String> {
    let mut out: Vec<String> = tys.iter().flat_map(|t| t.free_names(Sort::Ty)).collect();
    out.sort();
    out.dedup();
    out
}

pub(crate) fn gamma(entries: &[(&str, Type)]) -> TermContext {
    TermContext {
        gamma: entries.iter().map(|(n, t)| (n.to_string(), t.clone())).collect(),
        ..TermContext::default()
    }
}

/// `s ~ all a. (s -o a) -o a`.
pub fn encode_iso_self(s: &Type) -> EncodingBundle {
    let a = fresh("a");
    let va = Type::var(&a);
    let t = forall(&a, Type::lolli(Type::lolli(s.clone(), va.clone()), va.clone()));
    let mut b = EncodingBundle::new("iso-self", t.clone(), free_ty_vars(&[s]));

    let (x, h) = (fresh("x"), fresh("h"));
    let f = lam(
        &x,
        s.clone(),
        ty_lam(&a, lam(&h, Type::lolli(s.clone(), va.clone()), Term::app(var(&h), var(&x)))),
    );
    b.add("f", f, Type::lolli(s.clone(), t.clone()));
    let g = lam(&x, t.clone(), Term::app(Term::ty_app(var(&x), s.clone()), id(s.clone())));
    b.add("g", g, Type::lolli(t.clone(), s.clone()));

    let x = fresh("x");
    b.law(
        "g-after-f",
        gamma(&[(&x, s.clone())]),
        Term::app(var("g"), Term::app(var("f"), var(&x))),
        var(&x),
    );
    b.schema(
        "f-after-g",
        all_tm(&x, t.clone(), Prop::Eq(t, Term::app(var("f"), Term::app(var("g"), var(&x))), var(&x))),
    );
    b
}

/// `s * t ~ all a. (s -o t -o a) -o a`.
pub fn encode_tensor(s: &Type, t: &Type) -> EncodingBundle {
    let a = fresh("a");
    let va = Type::var(&a);
    let st = Type::tensor(s.clone(), t.clone());
    let curried = Type::lolli(s.clone(), Type::lolli(t.clone(), va.clone()));
    let enc = forall(&a, Type::lolli(curried.clone(), va.clone()));
    let mut b = EncodingBundle::new("tensor", enc.clone(), free_ty_vars(&[s, t]));

    let (x, x2) = (fresh("x"), fresh("x'"));
    let pairing = lam(&x, s.clone(), lam(&x2, t.clone(), Term::pair(var(&x), var(&x2))));
    b.add("pairing", pairing.clone(), Type::lolli(s.clone(), Type::lolli(t.clone(), st.clone())));

    let (y, h) = (fresh("y"), fresh("h"));
    let body = ty_lam(&a, lam(&h, curried, Term::apps(var(&h), [var(&x), var(&x2)])));
    let f = lam(&y, st.clone(), let_tensor(&x, &x2, Some((s.clone(), t.clone())), var(&y), body));
    b.add("f", f, Type::lolli(st.clone(), enc.clone()));
    let g = lam(&y, enc.clone(), Term::app(Term::ty_app(var(&y), st.clone()), pairing));
    b.add("g", g, Type::lolli(enc.clone(), st.clone()));

    let y = fresh("y");
    b.law(
        "g-after-f",
        gamma(&[(&y, st)]),
        Term::app(var("g"), Term::app(var("f"), var(&y))),
        var(&y),
    );
    b.schema(
        "f-after-g",
        all_tm(&y, enc.clone(), Prop::Eq(enc, Term::app(var("f"), Term::app(var("g"), var(&y))), var(&y))),
    );
    b
}

/// `I ~ all a. a -o a`.
pub fn encode_unit() -> EncodingBundle {
    let a = fresh("a");
    let enc = forall(&a, Type::lolli(Type::var(&a), Type::var(&a)));
    let mut b = EncodingBundle::new("unit", enc.clone(), Vec::new());

    let y = fresh("y");
    let poly_id = ty_lam(&a, lam(&y, Type::var(&a), var(&y)));
    b.add("id", poly_id.clone(), enc.clone());
    let x = fresh("x");
    b.add("f", lam(&x, Type::Unit, let_star(var(&x), poly_id)), Type::lolli(Type::Unit, enc.clone()));
    let t = fresh("t");
    b.add(
        "g",
        lam(&t, enc.clone(), Term::app(Term::ty_app(var(&t), Type::Unit), Term::Star)),
        Type::lolli(enc.clone(), Type::Unit),
    );

    b.law(
        "g-after-f",
        gamma(&[(&x, Type::Unit)]),
        Term::app(var("g"), Term::app(var("f"), var(&x))),
        var(&x),
    );
    b.schema(
        "f-after-g",
        all_tm(&t, enc.clone(), Prop::Eq(enc, Term::app(var("f"), Term::app(var("g"), var(&t))), var(&t))),
    );
    b
}

/// `0 = all a. a` with its eliminator `all s. 0 -o s`.
pub fn encode_zero() -> EncodingBundle {
    let zero = zero_type();
    let mut b = EncodingBundle::new("zero", zero.clone(), Vec::new());
    let (s, x) = (fresh("s"), fresh("x"));
    let vs = Type::var(&s);
    let absurd = ty_lam(&s, lam(&x, zero.clone(), Term::ty_app(var(&x), vs.clone())));
    b.add("absurd", absurd, forall(&s, Type::lolli(zero.clone(), vs.clone())));

    let h = fresh("h");
    let unique = all_ty(
        &s,
        all_tm(
            &h,
            Type::lolli(zero.clone(), vs.clone()),
            all_tm(
                &x,
                zero.clone(),
                Prop::Eq(
                    vs.clone(),
                    Term::app(var(&h), var(&x)),
                    Term::app(Term::ty_app(var("absurd"), vs), var(&x)),
                ),
            ),
        ),
    );
    b.schema("initial-uniqueness", unique);
    b
}

/// `0` as a weakly terminal object: `omega : all s. s -o 0`.
pub fn encode_one() -> EncodingBundle {
    let zero = zero_type();
    let mut b = EncodingBundle::new("one", zero.clone(), Vec::new());
    let (s, h) = (fresh("s"), fresh("h"));
    let target = Type::lolli(Type::var(&s), zero);
    let omega = ty_lam(
        &s,
        Term::app(Term::ty_app(Term::Y, target.clone()), Term::bang(ilam(&h, target.clone(), var(&h)))),
    );
    b.add("omega", omega, forall(&s, target));
    b
}
