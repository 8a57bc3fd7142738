use pilly_core::build::{all_rel, all_tm, all_ty, all_tys, compose, ex_tm, ex_ty, forall, id, ilam, lam, rel_var, ty_lam, var};
use pilly_core::fresh::fresh;
use pilly_core::{Flavor, Prop, Term, TermContext, Type};

use crate::basic::{free_ty_vars, gamma};
use crate::types::{exists_type, nat_type, product_type, sum_type};
use crate::EncodingBundle;

fn inject(s: &Type, t: &Type, left: bool) -> Term {
    let (x, a, f, g) = (fresh("x"), fresh("a"), fresh("f"), fresh("g"));
    let va = Type::var(&a);
    let chosen = if left { &f } else { &g };
    lam(
        &x,
        if left { s.clone() } else { t.clone() },
        ty_lam(
            &a,
            ilam(
                &f,
                Type::lolli(s.clone(), va.clone()),
                ilam(&g, Type::lolli(t.clone(), va), Term::app(var(chosen), var(&x))),
            ),
        ),
    )
}

/// `all w. (s -o w) -> (t -o w) -> s + t -o w`.
fn copair(s: &Type, t: &Type) -> (Term, Type) {
    let (w, f, g, x) = (fresh("w"), fresh("f"), fresh("g"), fresh("x"));
    let vw = Type::var(&w);
    let st = sum_type(s, t);
    let (fs, gs) = (Type::lolli(s.clone(), vw.clone()), Type::lolli(t.clone(), vw.clone()));
    let body = Term::apps(Term::ty_app(var(&x), vw.clone()), [Term::bang(var(&f)), Term::bang(var(&g))]);
    let term = ty_lam(&w, ilam(&f, fs.clone(), ilam(&g, gs.clone(), lam(&x, st.clone(), body))));
    let ty = forall(&w, Type::arrow(fs, Type::arrow(gs, Type::lolli(st, vw))));
    (term, ty)
}

/// `s + t = all a. (s -o a) -> (t -o a) -> a`.
pub fn encode_sum(s: &Type, t: &Type) -> EncodingBundle {
    let st = sum_type(s, t);
    let mut b = EncodingBundle::new("sum", st.clone(), free_ty_vars(&[s, t]));
    b.add("inl", inject(s, t, true), Type::lolli(s.clone(), st.clone()));
    b.add("inr", inject(s, t, false), Type::lolli(t.clone(), st.clone()));
    let (cp, cp_ty) = copair(s, t);
    b.add("copair", cp, cp_ty);

    let (w, f, g, x, y) = (fresh("w"), fresh("f"), fresh("g"), fresh("x"), fresh("y"));
    let vw = Type::var(&w);
    let mut ctx = gamma(&[
        (&f, Type::lolli(s.clone(), vw.clone())),
        (&g, Type::lolli(t.clone(), vw.clone())),
        (&x, s.clone()),
        (&y, t.clone()),
    ]);
    ctx.xi.push(w.clone());
    let case = |w: &Type, f: Term, g: Term| Term::apps(Term::ty_app(var("copair"), w.clone()), [Term::bang(f), Term::bang(g)]);
    b.law(
        "copair-inl",
        ctx.clone(),
        Term::app(case(&vw, var(&f), var(&g)), Term::app(var("inl"), var(&x))),
        Term::app(var(&f), var(&x)),
    );
    b.law(
        "copair-inr",
        ctx,
        Term::app(case(&vw, var(&f), var(&g)), Term::app(var("inr"), var(&y))),
        Term::app(var(&g), var(&y)),
    );

    let (w2, h, u) = (fresh("w'"), fresh("h"), fresh("u"));
    let vw2 = Type::var(&w2);
    let lhs = Term::app(
        case(&vw2, compose(var(&h), var(&f), s.clone()), compose(var(&h), var(&g), t.clone())),
        var(&u),
    );
    let rhs = Term::app(var(&h), Term::app(case(&vw, var(&f), var(&g)), var(&u)));
    let natural = all_tys(
        &[w.clone(), w2.clone()],
        all_tm(
            &h,
            Type::lolli(vw.clone(), vw2.clone()),
            all_tm(
                &f,
                Type::lolli(s.clone(), vw.clone()),
                all_tm(&g, Type::lolli(t.clone(), vw), all_tm(&u, st.clone(), Prop::Eq(vw2, lhs, rhs))),
            ),
        ),
    );
    b.schema("naturality", natural);
    let injections = Term::app(case(&st, var("inl"), var("inr")), var(&u));
    b.schema("copair-of-injections", all_tm(&u, st.clone(), Prop::Eq(st, injections, var(&u))));
    b
}

/// `s x t = all a. (s -o a) + (t -o a) -o a`.
pub fn encode_product(s: &Type, t: &Type) -> EncodingBundle {
    let pt = product_type(s, t);
    let mut b = EncodingBundle::new("product", pt.clone(), free_ty_vars(&[s, t]));

    let x = fresh("x");
    let project = |target: &Type, left: bool| {
        let (ls, lt) = (Type::lolli(s.clone(), target.clone()), Type::lolli(t.clone(), target.clone()));
        let chosen = Term::app(inject(&ls, &lt, left), id(target.clone()));
        lam(&x, pt.clone(), Term::app(Term::ty_app(var(&x), target.clone()), chosen))
    };
    b.add("fst", project(s, true), Type::lolli(pt.clone(), s.clone()));
    b.add("snd", project(t, false), Type::lolli(pt.clone(), t.clone()));

    let (w, f, g, a, h, z) = (fresh("w"), fresh("f"), fresh("g"), fresh("a"), fresh("h"), fresh("z"));
    let (vw, va) = (Type::var(&w), Type::var(&a));
    let (ls, lt) = (Type::lolli(s.clone(), va.clone()), Type::lolli(t.clone(), va.clone()));
    let (case, _) = copair(&ls, &lt);
    let via = |arg: &Type, m: &str| lam(&z, arg.clone(), compose(var(&z), var(m), vw.clone()));
    let dispatch = Term::apps(
        Term::ty_app(case, Type::lolli(vw.clone(), va.clone())),
        [Term::bang(via(&ls, &f)), Term::bang(via(&lt, &g)), var(&h), var(&x)],
    );
    let body = lam(&x, vw.clone(), ty_lam(&a, lam(&h, sum_type(&ls, &lt), dispatch)));
    let (fs, gs) = (Type::lolli(vw.clone(), s.clone()), Type::lolli(vw.clone(), t.clone()));
    let pair = ty_lam(&w, ilam(&f, fs.clone(), ilam(&g, gs.clone(), body)));
    let pair_ty = forall(&w, Type::arrow(fs.clone(), Type::arrow(gs.clone(), Type::lolli(vw.clone(), pt.clone()))));
    b.add("pair", pair, pair_ty);

    let mut ctx = gamma(&[(&f, fs), (&g, gs), (&x, vw.clone())]);
    ctx.xi.push(w.clone());
    let paired = |w: &Type, f: Term, g: Term, x: Term| {
        Term::apps(Term::ty_app(var("pair"), w.clone()), [Term::bang(f), Term::bang(g), x])
    };
    let px = paired(&vw, var(&f), var(&g), var(&x));
    b.law("fst-pair", ctx.clone(), Term::app(var("fst"), px.clone()), Term::app(var(&f), var(&x)));
    b.law("snd-pair", ctx, Term::app(var("snd"), px), Term::app(var(&g), var(&x)));

    let u = fresh("u");
    let surj = Prop::Eq(pt.clone(), paired(&pt, var("fst"), var("snd"), var(&u)), var(&u));
    b.schema("surjective-pairing", all_tm(&u, pt, surj));
    b
}

/// `N = all a. (a -o a) -> a -o a` with zero, successor and iteration.
pub fn encode_nat() -> EncodingBundle {
    let n = nat_type();
    let mut b = EncodingBundle::new("nat", n.clone(), Vec::new());

    let (a, f, x, y) = (fresh("a"), fresh("f"), fresh("x"), fresh("y"));
    let va = Type::var(&a);
    let endo = Type::lolli(va.clone(), va.clone());
    b.add("zero", ty_lam(&a, ilam(&f, endo.clone(), lam(&x, va.clone(), var(&x)))), n.clone());
    let iterate = Term::apps(Term::ty_app(var(&y), va.clone()), [Term::bang(var(&f)), var(&x)]);
    let succ = lam(
        &y,
        n.clone(),
        ty_lam(&a, ilam(&f, endo, lam(&x, va, Term::app(var(&f), iterate)))),
    );
    b.add("succ", succ, Type::lolli(n.clone(), n.clone()));

    let (s, base, step) = (fresh("s"), fresh("a"), fresh("b"));
    let vs = Type::var(&s);
    let s_endo = Type::lolli(vs.clone(), vs.clone());
    let fold = Term::apps(Term::ty_app(var(&y), vs.clone()), [Term::bang(var(&step)), var(&base)]);
    let iter = ty_lam(
        &s,
        lam(&base, vs.clone(), ilam(&step, s_endo.clone(), lam(&y, n.clone(), fold))),
    );
    let iter_ty = forall(&s, Type::lolli(vs.clone(), Type::arrow(s_endo.clone(), Type::lolli(n.clone(), vs.clone()))));
    b.add("iter", iter, iter_ty);

    let mut ctx = gamma(&[(&base, vs.clone()), (&step, s_endo), (&x, n.clone())]);
    ctx.xi.push(s.clone());
    let run = |arg: Term| {
        Term::apps(
            Term::ty_app(var("iter"), vs.clone()),
            [var(&base), Term::bang(var(&step)), arg],
        )
    };
    b.law("iter-zero", ctx.clone(), run(var("zero")), var(&base));
    b.law(
        "iter-succ",
        ctx,
        run(Term::app(var("succ"), var(&x))),
        Term::app(var(&step), run(var(&x))),
    );

    let (r, x2) = (fresh("R"), fresh("y"));
    let rel = |l: Term, r2: Term| Prop::RelApp(rel_var(&r), l, r2);
    let step_case = all_tm(
        &x,
        n.clone(),
        all_tm(
            &x2,
            n.clone(),
            Prop::implies(
                rel(var(&x), var(&x2)),
                rel(Term::app(var("succ"), var(&x)), Term::app(var("succ"), var(&x2))),
            ),
        ),
    );
    let conclusion = all_tm(&x, n.clone(), rel(var(&x), var(&x)));
    let induction = all_rel(
        &r,
        n.clone(),
        n.clone(),
        Flavor::AdmRel,
        Prop::implies(Prop::and(rel(var("zero"), var("zero")), step_case), conclusion),
    );
    b.schema("induction", induction);
    let rebuild = Term::apps(Term::ty_app(var(&x), n.clone()), [Term::bang(var("succ")), var("zero")]);
    b.schema("numerals", all_tm(&x, n.clone(), Prop::Eq(n, rebuild, var(&x))));
    b
}

/// `ex var. body = all b. (all var. body -o b) -o b`.
pub fn encode_exists(var_name: &str, body: &Type) -> EncodingBundle {
    let e = exists_type(var_name, body);
    let xi = free_ty_vars(&[&e]);
    let mut b = EncodingBundle::new("exists", e.clone(), xi);

    let (x, bv, f) = (fresh("x"), fresh("b"), fresh("f"));
    let vb = Type::var(&bv);
    let va = Type::var(var_name);
    let pack_body = ty_lam(
        &bv,
        lam(
            &f,
            forall(var_name, Type::lolli(body.clone(), vb.clone())),
            Term::app(Term::ty_app(var(&f), va.clone()), var(&x)),
        ),
    );
    let pack = ty_lam(var_name, lam(&x, body.clone(), pack_body));
    b.add("pack", pack.clone(), forall(var_name, Type::lolli(body.clone(), e.clone())));

    let (t, g, s) = (fresh("t"), fresh("g"), fresh("s"));
    let vt = Type::var(&t);
    let handler = forall(var_name, Type::lolli(body.clone(), vt.clone()));
    let hat = ty_lam(
        &t,
        lam(&g, handler.clone(), lam(&x, e.clone(), Term::app(Term::ty_app(var(&x), vt.clone()), var(&g)))),
    );
    b.add("hat", hat, forall(&t, Type::lolli(handler.clone(), Type::lolli(e.clone(), vt.clone()))));
    let consumer = Type::lolli(e.clone(), vt.clone());
    let packed = Term::app(Term::ty_app(pack, va.clone()), var(&x));
    let tilde = ty_lam(
        &t,
        lam(&s, consumer.clone(), ty_lam(var_name, lam(&x, body.clone(), Term::app(var(&s), packed)))),
    );
    b.add("tilde", tilde, forall(&t, Type::lolli(consumer.clone(), handler.clone())));

    let mut ctx: TermContext = gamma(&[(&g, handler.clone())]);
    ctx.xi.push(t.clone());
    let at_t = |name: &str| Term::ty_app(var(name), vt.clone());
    b.law(
        "tilde-after-hat",
        ctx,
        Term::app(at_t("tilde"), Term::app(at_t("hat"), var(&g))),
        var(&g),
    );

    let inverse = Prop::Eq(
        consumer.clone(),
        Term::app(at_t("hat"), Term::app(at_t("tilde"), var(&s))),
        var(&s),
    );
    b.schema("hat-after-tilde", all_ty(&t, all_tm(&s, consumer, inverse)));
    let x2 = fresh("x'");
    let witness = Term::app(Term::ty_app(var("pack"), va), var(&x2));
    let characterization = all_tm(
        &x,
        e.clone(),
        ex_ty(var_name, ex_tm(&x2, body.clone(), Prop::Eq(e, var(&x), witness))),
    );
    b.schema("characterization", characterization);
    b
}
