use pilly_core::build::{all_rel, all_tm, all_tys, compose, foralls, ilam, let_bang, let_tensor, subrel, ty_lams, var};
use pilly_core::fresh::{fresh, surface};
use pilly_core::{print_type, Flavor, Prop, Relation, Sort, Syntax, Term, Type};
use pilly_functor::{apply_action, polarity, split_occurrences, Arrow};
use pilly_relations::{eq, lolli, TypedRel};

use crate::basic::free_ty_vars;
use crate::types::Functor;
use crate::{EncodingBundle, EncodingError};

/// A type `body(neg, pos, neg_var, pos_var)` whose `neg` parameters and
/// `neg_var` occur only negatively and whose `pos` parameters and
/// `pos_var` occur only positively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecParams {
    pub neg: Vec<String>,
    pub pos: Vec<String>,
    pub neg_var: String,
    pub pos_var: String,
    pub body: Type,
}

fn violation(var: &str, found: &'static str, ty: &Type) -> EncodingError {
    EncodingError::PolarityViolation {
        var: surface(var).to_string(),
        found,
        ty: print_type(ty),
    }
}

fn check_polarities(ty: &Type, neg: &[String], pos: &[String]) -> Result<(), EncodingError> {
    for v in neg {
        if polarity(ty, v).positive {
            return Err(violation(v, "positively", ty));
        }
    }
    for v in pos {
        if polarity(ty, v).negative {
            return Err(violation(v, "negatively", ty));
        }
    }
    Ok(())
}

fn tys(names: &[String]) -> Vec<Type> {
    names.iter().map(Type::var).collect()
}

fn chain(parts: Vec<(Term, Type)>) -> Term {
    let mut it = parts.into_iter();
    let (mut acc, _) = it.next().expect("non-empty chain");
    for (f, dom) in it {
        acc = compose(acc, f, dom);
    }
    acc
}

struct Rec {
    p: RecParams,
}

impl Rec {
    fn sig(&self, xs: &[Type], ys: &[Type], a: &Type, b: &Type) -> Type {
        let mut names: Vec<String> = self.p.neg.iter().chain(&self.p.pos).cloned().collect();
        names.push(self.p.neg_var.clone());
        names.push(self.p.pos_var.clone());
        let mut by: Vec<Type> = xs.iter().chain(ys).cloned().collect();
        by.push(a.clone());
        by.push(b.clone());
        self.p.body.subst_tys(&names, &by)
    }

    /// `b |-> sig(xs, ys, a, b)`.
    fn omega(&self, xs: &[Type], ys: &[Type], a: &Type) -> Functor {
        let b = fresh("b");
        Functor {
            body: self.sig(xs, ys, a, &Type::var(&b)),
            var: b,
        }
    }

    /// `a |-> sig(ys, xs, omega(xs, ys, a), a)`.
    fn swapped(&self, xs: &[Type], ys: &[Type]) -> Functor {
        let a = fresh("a");
        let va = Type::var(&a);
        Functor {
            body: self.sig(ys, xs, &self.omega(xs, ys, &va).mu(), &va),
            var: a,
        }
    }

    fn tau_prime(&self, xs: &[Type], ys: &[Type]) -> Type {
        self.swapped(xs, ys).nu()
    }

    fn tau(&self, xs: &[Type], ys: &[Type]) -> Type {
        self.omega(xs, ys, &self.tau_prime(xs, ys)).mu()
    }

    fn inner(&self, xs: &[Type], ys: &[Type]) -> Functor {
        self.omega(xs, ys, &self.tau_prime(xs, ys))
    }

    /// The action of `sig(xs, ys, -, -)` on `f : a' -o a` and `g : b -o b'`.
    fn map(&self, xs: &[Type], ys: &[Type], f: &Arrow, g: &Arrow) -> Result<Term, EncodingError> {
        let (n, p) = (fresh("n"), fresh("p"));
        let ty = self.sig(xs, ys, &Type::var(&n), &Type::var(&p));
        Ok(apply_action(&ty, &n, &p, f, g)?)
    }

    /// `sig(xs, ys, tau'(xs, ys), tau(xs, ys)) -o tau(xs, ys)`.
    fn roll(&self, xs: &[Type], ys: &[Type]) -> Result<Term, EncodingError> {
        self.inner(xs, ys).roll()
    }

    fn unroll(&self, xs: &[Type], ys: &[Type]) -> Result<Term, EncodingError> {
        self.inner(xs, ys).unroll()
    }

    /// `tau'(xs, ys) -o sig(ys, xs, tau(xs, ys), tau'(xs, ys))`.
    fn out(&self, xs: &[Type], ys: &[Type]) -> Result<Term, EncodingError> {
        self.swapped(xs, ys).out()
    }

    fn unout(&self, xs: &[Type], ys: &[Type]) -> Result<Term, EncodingError> {
        self.swapped(xs, ys).unout()
    }

    /// Simultaneous fixed points `h1 : t1` and `h2 : t2` of `body`, which
    /// receives both as intuitionistic variables.
    fn fix2(
        t1: &Type,
        t2: &Type,
        body: impl FnOnce(&str, &str) -> Result<(Term, Term), EncodingError>,
    ) -> Result<(Term, Term), EncodingError> {
        let (p, a, b, h1, h2) = (fresh("p"), fresh("a"), fresh("b"), fresh("h"), fresh("h'"));
        let pair_ty = Type::tensor(Type::bang(t1.clone()), Type::bang(t2.clone()));
        let annot = Some((Type::bang(t1.clone()), Type::bang(t2.clone())));
        let (b1, b2) = body(&h1, &h2)?;
        let open = |scrut: Term, inner: Term| {
            let_tensor(
                &a,
                &b,
                annot.clone(),
                scrut,
                let_bang(&h1, Some(t1.clone()), var(&a), let_bang(&h2, Some(t2.clone()), var(&b), inner)),
            )
        };
        let step = ilam(&p, pair_ty.clone(), open(var(&p), Term::pair(Term::bang(b1), Term::bang(b2))));
        let fixed = Term::app(Term::ty_app(Term::Y, pair_ty), Term::bang(step));
        Ok((open(fixed.clone(), var(&h1)), open(fixed, var(&h2))))
    }

    /// `d(xs, ys) : tau'(xs, ys) -o tau(ys, xs)` and its mirror image.
    fn to_rec(&self, xs: &[Type], ys: &[Type]) -> Result<(Term, Term), EncodingError> {
        let t1 = Type::lolli(self.tau_prime(xs, ys), self.tau(ys, xs));
        let t2 = Type::lolli(self.tau_prime(ys, xs), self.tau(xs, ys));
        Rec::fix2(&t1, &t2, |h1, h2| {
            let side = |xs: &[Type], ys: &[Type], mine: &str, other: &str| -> Result<Term, EncodingError> {
                let f = Arrow::named(other, self.tau_prime(ys, xs), self.tau(xs, ys));
                let g = Arrow::named(mine, self.tau_prime(xs, ys), self.tau(ys, xs));
                let mid_dom = self.sig(ys, xs, &self.tau(xs, ys), &self.tau_prime(xs, ys));
                Ok(chain(vec![
                    (self.roll(ys, xs)?, Type::Unit),
                    (self.map(ys, xs, &f, &g)?, mid_dom),
                    (self.out(xs, ys)?, self.tau_prime(xs, ys)),
                ]))
            };
            Ok((side(xs, ys, h1, h2)?, side(ys, xs, h2, h1)?))
        })
    }

    /// `e(xs, ys) : tau(ys, xs) -o tau'(xs, ys)` and its mirror image.
    fn tau_to_prime(&self, xs: &[Type], ys: &[Type]) -> Result<(Term, Term), EncodingError> {
        let t1 = Type::lolli(self.tau(ys, xs), self.tau_prime(xs, ys));
        let t2 = Type::lolli(self.tau(xs, ys), self.tau_prime(ys, xs));
        Rec::fix2(&t1, &t2, |h1, h2| {
            let side = |xs: &[Type], ys: &[Type], mine: &str, other: &str| -> Result<Term, EncodingError> {
                let f = Arrow::named(other, self.tau(xs, ys), self.tau_prime(ys, xs));
                let g = Arrow::named(mine, self.tau(ys, xs), self.tau_prime(xs, ys));
                let mid_dom = self.sig(ys, xs, &self.tau_prime(ys, xs), &self.tau(ys, xs));
                Ok(chain(vec![
                    (self.unout(xs, ys)?, Type::Unit),
                    (self.map(ys, xs, &f, &g)?, mid_dom),
                    (self.unroll(ys, xs)?, self.tau(ys, xs)),
                ]))
            };
            Ok((side(xs, ys, h1, h2)?, side(ys, xs, h2, h1)?))
        })
    }

    /// `i : sig(xs, ys, tau(ys, xs), tau(xs, ys)) -o tau(xs, ys)`.
    fn iso(&self, xs: &[Type], ys: &[Type]) -> Result<Term, EncodingError> {
        let (d, _) = self.to_rec(xs, ys)?;
        let tau = self.tau(xs, ys);
        let f = Arrow {
            term: d,
            dom: self.tau_prime(xs, ys),
            cod: self.tau(ys, xs),
        };
        let mapped = self.map(xs, ys, &f, &Arrow::identity(tau.clone()))?;
        Ok(chain(vec![
            (self.roll(xs, ys)?, Type::Unit),
            (mapped, self.sig(xs, ys, &self.tau(ys, xs), &tau)),
        ]))
    }

    /// `i^-1 : tau(xs, ys) -o sig(xs, ys, tau(ys, xs), tau(xs, ys))`.
    fn iso_inv(&self, xs: &[Type], ys: &[Type]) -> Result<Term, EncodingError> {
        let (e, _) = self.tau_to_prime(xs, ys)?;
        let tau = self.tau(xs, ys);
        let f = Arrow {
            term: e,
            dom: self.tau(ys, xs),
            cod: self.tau_prime(xs, ys),
        };
        let mapped = self.map(xs, ys, &f, &Arrow::identity(tau.clone()))?;
        Ok(chain(vec![(mapped, Type::Unit), (self.unroll(xs, ys)?, tau)]))
    }

    /// The mediating pair `h : tau(xs, ys) -o w` and `h' : w' -o tau(ys, xs)`
    /// for `g : sig(xs, ys, w', w) -o w` and `g' : w' -o sig(ys, xs, w, w')`.
    fn mediators(&self, xs: &[Type], ys: &[Type], w: &Type, w2: &Type, g: &str, g2: &str) -> Result<(Term, Term), EncodingError> {
        let t1 = Type::lolli(self.tau(xs, ys), w.clone());
        let t2 = Type::lolli(w2.clone(), self.tau(ys, xs));
        Rec::fix2(&t1, &t2, |h1, h2| {
            let back = Arrow::named(h2, w2.clone(), self.tau(ys, xs));
            let fwd = Arrow::named(h1, self.tau(xs, ys), w.clone());
            let h = chain(vec![
                (var(g), Type::Unit),
                (self.map(xs, ys, &back, &fwd)?, self.sig(xs, ys, &self.tau(ys, xs), &self.tau(xs, ys))),
                (self.iso_inv(xs, ys)?, self.tau(xs, ys)),
            ]);
            let h_prime = chain(vec![
                (self.iso(ys, xs)?, Type::Unit),
                (self.map(ys, xs, &fwd, &back)?, self.sig(ys, xs, w, w2)),
                (var(g2), w2.clone()),
            ]);
            Ok((h, h_prime))
        })
    }
}

/// The recursive type `rec a. body(a, a)`, obtained by splitting the
/// occurrences of `var` into a negative and a positive variable.
pub fn encode_rec(var_name: &str, body: &Type) -> Result<EncodingBundle, EncodingError> {
    let split = split_occurrences(body, var_name);
    let params = RecParams {
        neg: Vec::new(),
        pos: Vec::new(),
        neg_var: split.negative,
        pos_var: split.positive,
        body: split.split,
    };
    let mut b = encode_rec_with_params(&params)?;
    b.name = "rec".to_string();
    Ok(b)
}

/// The recursive type `tau(neg, pos) = rec a. body(neg, pos, a, a)` and the
/// swapped type `tau'(neg, pos)`. A shorter parameter list is padded with
/// unused variables so that both lists can change places.
pub fn encode_rec_with_params(params: &RecParams) -> Result<EncodingBundle, EncodingError> {
    let mut p = params.clone();
    let mut xi = free_ty_vars(&[&p.body]);
    xi.retain(|v| !p.neg.contains(v) && !p.pos.contains(v) && *v != p.neg_var && *v != p.pos_var);
    let mut declared_neg = p.neg.clone();
    declared_neg.push(p.neg_var.clone());
    let mut declared_pos = p.pos.clone();
    declared_pos.push(p.pos_var.clone());
    check_polarities(&p.body, &declared_neg, &declared_pos)?;
    if !p.body.dangling(Sort::Ty).is_empty() {
        return Err(EncodingError::NotInductivelyConstructed(print_type(&p.body)));
    }
    while p.neg.len() < p.pos.len() {
        p.neg.push(fresh(&format!("a{}", p.neg.len() + 1)));
    }
    while p.pos.len() < p.neg.len() {
        p.pos.push(fresh(&format!("b{}", p.pos.len() + 1)));
    }
    let rec = Rec { p };
    let (xs, ys) = (tys(&rec.p.neg), tys(&rec.p.pos));
    let tau = rec.tau(&xs, &ys);
    let tau_prime = rec.tau_prime(&xs, &ys);
    check_polarities(&tau, &rec.p.neg, &rec.p.pos)?;
    check_polarities(&tau_prime, &rec.p.pos, &rec.p.neg)?;

    let name = if params.neg.is_empty() && params.pos.is_empty() { "rec" } else { "rec-with-params" };
    let mut b = EncodingBundle::new(name, tau.clone(), xi);
    let all: Vec<String> = rec.p.neg.iter().chain(&rec.p.pos).cloned().collect();
    let close = |t: Term| ty_lams(&all, t);
    let close_ty = |t: Type| foralls(&all, t);

    let s_in = rec.sig(&xs, &ys, &tau_prime, &tau);
    b.add("roll", close(rec.roll(&xs, &ys)?), close_ty(Type::lolli(s_in, tau.clone())));
    let s_out = rec.sig(&ys, &xs, &tau, &tau_prime);
    b.add("out", close(rec.out(&xs, &ys)?), close_ty(Type::lolli(tau_prime.clone(), s_out)));
    let s_iso = rec.sig(&xs, &ys, &rec.tau(&ys, &xs), &tau);
    b.add("i", close(rec.iso(&xs, &ys)?), close_ty(Type::lolli(s_iso.clone(), tau.clone())));
    b.add("i_inv", close(rec.iso_inv(&xs, &ys)?), close_ty(Type::lolli(tau.clone(), s_iso.clone())));

    let (w, w2, g, g2) = (fresh("w"), fresh("w'"), fresh("g"), fresh("g'"));
    let (vw, vw2) = (Type::var(&w), Type::var(&w2));
    let alg = Type::lolli(rec.sig(&xs, &ys, &vw2, &vw), vw.clone());
    let coalg = Type::lolli(vw2.clone(), rec.sig(&ys, &xs, &vw, &vw2));
    let (h, h2) = rec.mediators(&xs, &ys, &vw, &vw2, &g, &g2)?;
    let mut dialgebra = all.clone();
    dialgebra.extend([w.clone(), w2.clone()]);
    let wrap = |t: Term| ty_lams(&dialgebra, ilam(&g, alg.clone(), ilam(&g2, coalg.clone(), t)));
    let wrap_ty = |t: Type| foralls(&dialgebra, Type::arrow(alg.clone(), Type::arrow(coalg.clone(), t)));
    b.add("k", wrap(h), wrap_ty(Type::lolli(tau.clone(), vw.clone())));
    b.add("k'", wrap(h2), wrap_ty(Type::lolli(vw2.clone(), rec.tau(&ys, &xs))));

    let at = |name: &str, xs: &[Type], ys: &[Type]| Term::ty_apps(var(name), xs.iter().chain(ys).cloned());
    let x = fresh("x");
    let round = |outer: Term, inner: Term, ty: &Type| {
        all_tm(&x, ty.clone(), Prop::Eq(ty.clone(), Term::app(outer, Term::app(inner, var(&x))), var(&x)))
    };
    b.schema("i-after-i-inv", close_prop(&all, round(at("i", &xs, &ys), at("i_inv", &xs, &ys), &tau)));
    b.schema("i-inv-after-i", close_prop(&all, round(at("i_inv", &xs, &ys), at("i", &xs, &ys), &s_iso)));
    b.schema("mixed-induction", rec.mixed_rule(&xs, &ys, &all));
    Ok(b)
}

fn close_prop(vars: &[String], p: Prop) -> Prop {
    all_tys(vars, p)
}

impl Rec {
    /// For `S- : Rel(tau(w+, w-), tau(w+', w-'))` and admissible
    /// `S+ : AdmRel(tau(w-, w+), tau(w-', w+'))`: if `(i^-1, i^-1)` maps
    /// `S-` into `sig[R+, R-, S+, S-]` and `(i, i)` maps
    /// `sig[R-, R+, S-, S+]` into `S+`, then `S- ⊂ tau[R+, R-]` and
    /// `tau[R-, R+] ⊂ S+`. Without parameters the conclusion reads
    /// `S- ⊂ eq ⊂ S+`.
    fn mixed_rule(&self, xs: &[Type], ys: &[Type], all: &[String]) -> Prop {
        let n = self.p.neg.len();
        if n == 0 {
            return self.mixed_rule_closed();
        }
        let fresh_list = |base: &str| (0..n).map(|i| fresh(&format!("{base}{}", i + 1))).collect::<Vec<_>>();
        let (wm, wp, wm2, wp2) = (fresh_list("u"), fresh_list("v"), fresh_list("u'"), fresh_list("v'"));
        let (rm, rp) = (fresh_list("Q"), fresh_list("P"));
        let (tm, tp, tm2, tp2) = (tys(&wm), tys(&wp), tys(&wm2), tys(&wp2));
        let rel_of = |names: &[String], dom: &[Type], cod: &[Type]| -> Vec<TypedRel> {
            names
                .iter()
                .zip(dom.iter().zip(cod))
                .map(|(r, (d, c))| TypedRel::var(r, d.clone(), c.clone()))
                .collect()
        };
        let r_minus = rel_of(&rm, &tm, &tm2);
        let r_plus = rel_of(&rp, &tp, &tp2);

        let (sm, sp) = (fresh("S-"), fresh("S+"));
        let s_minus = TypedRel::var(&sm, self.tau(&tp, &tm), self.tau(&tp2, &tm2));
        let s_plus = TypedRel::var(&sp, self.tau(&tm, &tp), self.tau(&tm2, &tp2));
        let sig_rel = |a: &[TypedRel], b: &[TypedRel], c: &TypedRel, d: &TypedRel| -> TypedRel {
            let (nv, pv) = (fresh("n"), fresh("p"));
            let body = self.sig(xs, ys, &Type::var(&nv), &Type::var(&pv));
            let mut params: Vec<String> = all.to_vec();
            params.extend([nv, pv]);
            let mut args: Vec<Relation> = a.iter().chain(b).map(|r| r.rel.clone()).collect();
            args.extend([c.rel.clone(), d.rel.clone()]);
            let side = |sel: fn(&TypedRel) -> &Type| {
                let xs: Vec<Type> = a.iter().map(|r| sel(r).clone()).collect();
                let ys: Vec<Type> = b.iter().map(|r| sel(r).clone()).collect();
                self.sig(&xs, &ys, sel(c), sel(d))
            };
            TypedRel::new(
                pilly_core::build::type_rel(&params, body, args),
                side(|r| &r.dom),
                side(|r| &r.cod),
            )
        };
        let tau_rel = |a: &[TypedRel], b: &[TypedRel]| -> TypedRel {
            let body = self.tau(xs, ys);
            let args: Vec<Relation> = a.iter().chain(b).map(|r| r.rel.clone()).collect();
            let dom = self.tau(&a.iter().map(|r| r.dom.clone()).collect::<Vec<_>>(), &b.iter().map(|r| r.dom.clone()).collect::<Vec<_>>());
            let cod = self.tau(&a.iter().map(|r| r.cod.clone()).collect::<Vec<_>>(), &b.iter().map(|r| r.cod.clone()).collect::<Vec<_>>());
            TypedRel::new(pilly_core::build::type_rel(all, body, args), dom, cod)
        };
        let inst = |name: &str, a: &[TypedRel], b: &[TypedRel], side: fn(&TypedRel) -> &Type| {
            Term::ty_apps(var(name), a.iter().chain(b).map(|r| side(r).clone()))
        };
        let hyp_inv = lolli(&s_minus, &sig_rel(&r_plus, &r_minus, &s_plus, &s_minus))
            .apply(inst("i_inv", &r_plus, &r_minus, |r| &r.dom), inst("i_inv", &r_plus, &r_minus, |r| &r.cod));
        let hyp = lolli(&sig_rel(&r_minus, &r_plus, &s_minus, &s_plus), &s_plus)
            .apply(inst("i", &r_minus, &r_plus, |r| &r.dom), inst("i", &r_minus, &r_plus, |r| &r.cod));
        let below = tau_rel(&r_plus, &r_minus);
        let above = tau_rel(&r_minus, &r_plus);
        let concl = Prop::and(
            subrel(s_minus.rel.clone(), below.rel, s_minus.dom.clone(), s_minus.cod.clone()),
            subrel(above.rel, s_plus.rel.clone(), s_plus.dom.clone(), s_plus.cod.clone()),
        );
        let mut prop = Prop::implies(Prop::and(hyp_inv, hyp), concl);
        prop = all_rel(&sp, s_plus.dom.clone(), s_plus.cod.clone(), Flavor::AdmRel, prop);
        prop = all_rel(&sm, s_minus.dom.clone(), s_minus.cod.clone(), Flavor::Rel, prop);
        for r in r_plus.iter().zip(&rp).rev() {
            prop = all_rel(r.1, r.0.dom.clone(), r.0.cod.clone(), Flavor::AdmRel, prop);
        }
        for r in r_minus.iter().zip(&rm).rev() {
            prop = all_rel(r.1, r.0.dom.clone(), r.0.cod.clone(), Flavor::AdmRel, prop);
        }
        let mut tyvars = wm;
        tyvars.extend(wp);
        tyvars.extend(wm2);
        tyvars.extend(wp2);
        all_tys(&tyvars, prop)
    }

    fn mixed_rule_closed(&self) -> Prop {
        let tau = self.tau(&[], &[]);
        let (sm, sp) = (fresh("R-"), fresh("R+"));
        let r_minus = TypedRel::var(&sm, tau.clone(), tau.clone());
        let r_plus = TypedRel::var(&sp, tau.clone(), tau.clone());
        let (nv, pv) = (fresh("n"), fresh("p"));
        let body = self.sig(&[], &[], &Type::var(&nv), &Type::var(&pv));
        let params = [nv, pv];
        let s_iso = self.sig(&[], &[], &tau, &tau);
        let sig_rel = |a: &TypedRel, b: &TypedRel| {
            TypedRel::new(
                pilly_core::build::type_rel(&params, body.clone(), vec![a.rel.clone(), b.rel.clone()]),
                s_iso.clone(),
                s_iso.clone(),
            )
        };
        let hyp_inv = lolli(&r_minus, &sig_rel(&r_plus, &r_minus)).apply(var("i_inv"), var("i_inv"));
        let hyp = lolli(&sig_rel(&r_minus, &r_plus), &r_plus).apply(var("i"), var("i"));
        let eq_tau = eq(&tau).rel;
        let concl = Prop::and(
            subrel(r_minus.rel.clone(), eq_tau.clone(), tau.clone(), tau.clone()),
            subrel(eq_tau, r_plus.rel.clone(), tau.clone(), tau.clone()),
        );
        let prop = Prop::implies(Prop::and(hyp_inv, hyp), concl);
        all_rel(
            &sm,
            tau.clone(),
            tau.clone(),
            Flavor::Rel,
            all_rel(&sp, tau.clone(), tau, Flavor::AdmRel, prop),
        )
    }
}
