use pilly_core::build::{all_rel, all_tm, all_ty, forall, ilam, lam, let_bang, let_tensor, ty_lam, var};
use pilly_core::fresh::fresh;
use pilly_core::{Flavor, Prop, Relation, Term, Type};
use pilly_functor::Arrow;
use pilly_relations::{lolli, TypedRel};

use crate::basic::{free_ty_vars, gamma};
use crate::types::Functor;
use crate::{EncodingBundle, EncodingError};

fn bang_app(f: Term, ty: Type, arg: Term) -> Term {
    Term::app(Term::ty_app(f, ty), Term::bang(arg))
}

impl Functor {
    fn endo(&self, t: &Type) -> Type {
        Type::lolli(self.at(t), t.clone())
    }

    fn coalg(&self, t: &Type) -> Type {
        Type::lolli(t.clone(), self.at(t))
    }

    /// `fold : all a. (F a -o a) -> mu -o a`.
    pub(crate) fn fold(&self) -> (Term, Type) {
        let (a, f, u) = (fresh("a"), fresh("f"), fresh("u"));
        let va = Type::var(&a);
        let mu = self.mu();
        let body = bang_app(var(&u), va.clone(), var(&f));
        let term = ty_lam(&a, ilam(&f, self.endo(&va), lam(&u, mu.clone(), body)));
        (term, forall(&a, Type::arrow(self.endo(&va), Type::lolli(mu, va))))
    }

    /// `in : F mu -o mu`.
    pub(crate) fn roll(&self) -> Result<Term, EncodingError> {
        let (z, a, f) = (fresh("z"), fresh("a"), fresh("f"));
        let va = Type::var(&a);
        let mu = self.mu();
        let folded = bang_app(self.fold().0, va.clone(), var(&f));
        let mapped = self.map(&Arrow {
            term: folded,
            dom: mu.clone(),
            cod: va.clone(),
        })?;
        let body = Term::app(var(&f), Term::app(mapped, var(&z)));
        Ok(lam(&z, self.at(&mu), ty_lam(&a, ilam(&f, self.endo(&va), body))))
    }

    /// `fold [F mu] !(F in) : mu -o F mu`.
    pub(crate) fn unroll(&self) -> Result<Term, EncodingError> {
        let mu = self.mu();
        let fm = self.at(&mu);
        let lifted = self.map(&Arrow {
            term: self.roll()?,
            dom: fm.clone(),
            cod: mu,
        })?;
        Ok(bang_app(self.fold().0, fm, lifted))
    }

    /// `pack [a] x` into `nu`, for `x : !(a -o F a) * a`.
    fn pack(&self, witness: &Type, x: Term) -> Term {
        let (b, k) = (fresh("b"), fresh("k"));
        let vb = Type::var(&b);
        let v = Type::var(&self.var);
        let state = Type::tensor(Type::bang(self.coalg(&v)), v);
        let handler = forall(&self.var, Type::lolli(state, vb.clone()));
        ty_lam(&b, lam(&k, handler, Term::app(Term::ty_app(var(&k), witness.clone()), x)))
    }

    /// `unfold : all a. (a -o F a) -> a -o nu`.
    pub(crate) fn unfold(&self) -> (Term, Type) {
        let (a, f, x) = (fresh("a"), fresh("f"), fresh("x"));
        let va = Type::var(&a);
        let nu = self.nu();
        let body = self.pack(&va, Term::pair(var(&f), var(&x)));
        let term = ty_lam(&a, lam(&f, Type::bang(self.coalg(&va)), lam(&x, va.clone(), body)));
        (term, forall(&a, Type::arrow(self.coalg(&va), Type::lolli(va, nu))))
    }

    /// `r : all a. !(a -o F a) * a -o F nu`.
    pub(crate) fn step(&self) -> Result<(Term, Type), EncodingError> {
        let (a, y, w, z, f) = (fresh("a"), fresh("y"), fresh("w"), fresh("z"), fresh("f"));
        let va = Type::var(&a);
        let nu = self.nu();
        let state = Type::tensor(Type::bang(self.coalg(&va)), va.clone());
        let mapped = self.map(&Arrow {
            term: bang_app(self.unfold().0, va.clone(), var(&f)),
            dom: va.clone(),
            cod: nu.clone(),
        })?;
        let inner = let_bang(
            &f,
            Some(self.coalg(&va)),
            var(&w),
            Term::app(mapped, Term::app(var(&f), var(&z))),
        );
        let body = let_tensor(
            &w,
            &z,
            Some((Type::bang(self.coalg(&va)), va.clone())),
            var(&y),
            inner,
        );
        let term = ty_lam(&a, lam(&y, state.clone(), body));
        Ok((term, forall(&a, Type::lolli(state, self.at(&nu)))))
    }

    /// `out : nu -o F nu`.
    pub(crate) fn out(&self) -> Result<Term, EncodingError> {
        let x = fresh("x");
        let nu = self.nu();
        let body = Term::app(Term::ty_app(var(&x), self.at(&nu)), self.step()?.0);
        Ok(lam(&x, nu, body))
    }

    /// `unfold [F nu] !(F out) : F nu -o nu`.
    pub(crate) fn unout(&self) -> Result<Term, EncodingError> {
        let nu = self.nu();
        let fv = self.at(&nu);
        let lifted = self.map(&Arrow {
            term: self.out()?,
            dom: nu,
            cod: fv.clone(),
        })?;
        Ok(bang_app(self.unfold().0, fv, lifted))
    }

    /// `F[R]`, with the other free type variables related by equality.
    fn relate(&self, xi: &[String], r: &TypedRel) -> TypedRel {
        let mut params = xi.to_vec();
        params.push(self.var.clone());
        let mut args: Vec<Relation> = xi.iter().map(|v| pilly_relations::eq(&Type::var(v)).rel).collect();
        args.push(r.rel.clone());
        let rel = pilly_core::build::type_rel(&params, self.body.clone(), args);
        TypedRel::new(rel, self.at(&r.dom), self.at(&r.cod))
    }
}

fn functor(var: &str, body: &Type) -> Result<(Functor, Vec<String>), EncodingError> {
    let f = Functor::new(var, body.clone())?;
    let mut xi = free_ty_vars(&[body]);
    xi.retain(|v| v != var);
    Ok((f, xi))
}

/// `mu var. body = all var. (body -o var) -> var`, for `var` positive in
/// `body`.
pub fn encode_mu(var_name: &str, body: &Type) -> Result<EncodingBundle, EncodingError> {
    let (fun, xi) = functor(var_name, body)?;
    let mu = fun.mu();
    let mut b = EncodingBundle::new("mu", mu.clone(), xi.clone());
    let (fold, fold_ty) = fun.fold();
    b.add("fold", fold, fold_ty);
    b.add("mu_in", fun.roll()?, Type::lolli(fun.at(&mu), mu.clone()));

    let (t, f, x) = (fresh("t"), fresh("f"), fresh("x"));
    let vt = Type::var(&t);
    let mut ctx = gamma(&[(&f, fun.endo(&vt)), (&x, fun.at(&mu))]);
    ctx.xi.push(t.clone());
    let folded = bang_app(var("fold"), vt.clone(), var(&f));
    let mapped = fun.map(&Arrow {
        term: folded.clone(),
        dom: mu.clone(),
        cod: vt.clone(),
    })?;
    b.law(
        "fold-square",
        ctx,
        Term::app(folded.clone(), Term::app(var("mu_in"), var(&x))),
        Term::app(var(&f), Term::app(mapped, var(&x))),
    );

    let (h, u) = (fresh("h"), fresh("u"));
    let h_mapped = fun.map(&Arrow::named(&h, mu.clone(), vt.clone()))?;
    let square = all_tm(
        &x,
        fun.at(&mu),
        Prop::Eq(
            vt.clone(),
            Term::app(var(&h), Term::app(var("mu_in"), var(&x))),
            Term::app(var(&f), Term::app(h_mapped, var(&x))),
        ),
    );
    let agree = all_tm(&u, mu.clone(), Prop::Eq(vt.clone(), Term::app(var(&h), var(&u)), Term::app(folded, var(&u))));
    let initial = all_ty(
        &t,
        all_tm(
            &f,
            fun.endo(&vt),
            all_tm(&h, Type::lolli(mu.clone(), vt), Prop::implies(square, agree)),
        ),
    );
    b.schema("initiality", initial);

    let r = fresh("R");
    let rr = TypedRel::var(&r, mu.clone(), mu.clone());
    let closed = lolli(&fun.relate(&xi, &rr), &rr).apply(var("mu_in"), var("mu_in"));
    let everywhere = all_tm(&x, mu.clone(), rr.apply(var(&x), var(&x)));
    b.schema(
        "induction",
        all_rel(&r, mu.clone(), mu, Flavor::AdmRel, Prop::implies(closed, everywhere)),
    );
    Ok(b)
}

/// `nu var. body = ex var. !(var -o body) * var`, for `var` positive in
/// `body`.
pub fn encode_nu(var_name: &str, body: &Type) -> Result<EncodingBundle, EncodingError> {
    let (fun, xi) = functor(var_name, body)?;
    let nu = fun.nu();
    let mut b = EncodingBundle::new("nu", nu.clone(), xi.clone());
    let (unfold, unfold_ty) = fun.unfold();
    b.add("unfold", unfold, unfold_ty);
    b.add("out", fun.out()?, Type::lolli(nu.clone(), fun.at(&nu)));
    let (r, r_ty) = fun.step()?;
    b.add("r", r, r_ty);

    let (t, f, x) = (fresh("t"), fresh("f"), fresh("x"));
    let vt = Type::var(&t);
    let mut ctx = gamma(&[(&f, fun.coalg(&vt)), (&x, vt.clone())]);
    ctx.xi.push(t.clone());
    let unfolded = bang_app(var("unfold"), vt.clone(), var(&f));
    let mapped = fun.map(&Arrow {
        term: unfolded.clone(),
        dom: vt.clone(),
        cod: nu.clone(),
    })?;
    b.law(
        "out-unfold",
        ctx,
        Term::app(var("out"), Term::app(unfolded.clone(), var(&x))),
        Term::app(mapped, Term::app(var(&f), var(&x))),
    );

    let h = fresh("h");
    let h_mapped = fun.map(&Arrow::named(&h, vt.clone(), nu.clone()))?;
    let square = all_tm(
        &x,
        vt.clone(),
        Prop::Eq(
            fun.at(&nu),
            Term::app(var("out"), Term::app(var(&h), var(&x))),
            Term::app(h_mapped, Term::app(var(&f), var(&x))),
        ),
    );
    let agree = all_tm(
        &x,
        vt.clone(),
        Prop::Eq(nu.clone(), Term::app(var(&h), var(&x)), Term::app(unfolded, var(&x))),
    );
    let finality = all_ty(
        &t,
        all_tm(
            &f,
            fun.coalg(&vt),
            all_tm(&h, Type::lolli(vt, nu.clone()), Prop::implies(square, agree)),
        ),
    );
    b.schema("finality", finality);

    let coinduction = |flavor: Flavor| {
        let (r, y) = (fresh("R"), fresh("y"));
        let rr = TypedRel::var(&r, nu.clone(), nu.clone());
        let closed = lolli(&rr, &fun.relate(&xi, &rr)).apply(var("out"), var("out"));
        let bisim = all_tm(
            &x,
            nu.clone(),
            all_tm(
                &y,
                nu.clone(),
                Prop::implies(rr.apply(var(&x), var(&y)), Prop::Eq(nu.clone(), var(&x), var(&y))),
            ),
        );
        all_rel(&r, nu.clone(), nu.clone(), flavor, Prop::implies(closed, bisim))
    };
    b.schema("coinduction", coinduction(Flavor::AdmRel));
    b.schema("general-coinduction", coinduction(Flavor::Rel));
    Ok(b)
}
