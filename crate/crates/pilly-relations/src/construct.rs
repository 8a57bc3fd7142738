//! Constructions on definable relations, one per type former, and the
//! structural unfolding of the relational interpretation of a type.
//!
//! Every construction is assembled from its definition (reindexing and
//! the polymorphic closure) and returned in normal form.

use pilly_core::build::{all_rel, all_tm, all_ty, compr, forall, id, lam, let_star, let_tensor, rel_var, subrel, ty_lam, var};
use pilly_core::fresh::fresh;
use pilly_core::{Flavor, Prop, Relation, Sort, Syntax, Term, Type, Var};

use crate::normal::normalize_relation;
use crate::RelError;

/// A relation together with its domain and codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedRel {
    pub rel: Relation,
    pub dom: Type,
    pub cod: Type,
}

impl TypedRel {
    pub fn new(rel: Relation, dom: Type, cod: Type) -> Self {
        TypedRel { rel, dom, cod }
    }

    /// A relation variable from the context.
    pub fn var(name: &str, dom: Type, cod: Type) -> Self {
        TypedRel::new(rel_var(name), dom, cod)
    }

    pub fn apply(&self, left: Term, right: Term) -> Prop {
        Prop::RelApp(self.rel.clone(), left, right)
    }

    fn normalized(self) -> Self {
        TypedRel {
            rel: normalize_relation(&self.rel),
            ..self
        }
    }
}

/// `<f> = (x:s, y:t). f x =_t y`.
pub fn graph(f: &Term, dom: &Type, cod: &Type) -> TypedRel {
    let (x, y) = (fresh("x"), fresh("y"));
    let body = Prop::Eq(cod.clone(), Term::app(f.clone(), var(&x)), var(&y));
    TypedRel::new(compr(&x, dom.clone(), &y, cod.clone(), body), dom.clone(), cod.clone()).normalized()
}

/// The graph of the identity.
pub fn eq(ty: &Type) -> TypedRel {
    graph(&id(ty.clone()), ty, ty)
}

/// `(f, g)^* r = (x:s', y:t'). r(f x, g y)` for `f : s' -o s`, `g : t' -o t`.
pub fn reindex(r: &TypedRel, f: &Term, f_dom: &Type, g: &Term, g_dom: &Type) -> TypedRel {
    let (x, y) = (fresh("x"), fresh("y"));
    let body = r.apply(Term::app(f.clone(), var(&x)), Term::app(g.clone(), var(&y)));
    TypedRel::new(compr(&x, f_dom.clone(), &y, g_dom.clone(), body), f_dom.clone(), g_dom.clone()).normalized()
}

/// `(f:s -o s', g:t -o t'). all x:s. all y:t. r(x, y) => r'(f x, g y)`.
pub fn lolli(r: &TypedRel, r2: &TypedRel) -> TypedRel {
    function_space(r, r2, false)
}

/// `(f:s -> s', g:t -> t'). all x:s. all y:t. r(x, y) => r'(f !x, g !y)`.
pub fn arrow(r: &TypedRel, r2: &TypedRel) -> TypedRel {
    function_space(r, r2, true)
}

fn function_space(r: &TypedRel, r2: &TypedRel, intuitionistic: bool) -> TypedRel {
    let (f, g, x, y) = (fresh("f"), fresh("g"), fresh("x"), fresh("y"));
    let former = if intuitionistic { Type::arrow } else { Type::lolli };
    let arg = |v: &str| {
        if intuitionistic {
            Term::bang(var(v))
        } else {
            var(v)
        }
    };
    let dom = former(r.dom.clone(), r2.dom.clone());
    let cod = former(r.cod.clone(), r2.cod.clone());
    let body = all_tm(
        &x,
        r.dom.clone(),
        all_tm(
            &y,
            r.cod.clone(),
            Prop::implies(
                r.apply(var(&x), var(&y)),
                r2.apply(Term::app(var(&f), arg(&x)), Term::app(var(&g), arg(&y))),
            ),
        ),
    );
    TypedRel::new(compr(&f, dom.clone(), &g, cod.clone(), body), dom, cod).normalized()
}

/// `all (a, b, R : AdmRel(a, b)). r`, where `r` mentions the free type
/// variables `a` (in its domain), `b` (in its codomain) and the relation
/// variable `R`.
pub fn forall_rel(a: &str, b: &str, r_name: &str, r: &TypedRel) -> TypedRel {
    let (t, u) = (fresh("t"), fresh("u"));
    let dom = forall(a, r.dom.clone());
    let cod = forall(b, r.cod.clone());
    let inner = r.apply(
        Term::ty_app(var(&t), Type::var(a)),
        Term::ty_app(var(&u), Type::var(b)),
    );
    let body = all_ty(
        a,
        all_ty(b, all_rel(r_name, Type::var(a), Type::var(b), Flavor::AdmRel, inner)),
    );
    TypedRel::new(compr(&t, dom.clone(), &u, cod.clone(), body), dom, cod).normalized()
}

/// Fresh `a`, `b` and `R : AdmRel(a, b)` for a polymorphic closure.
fn closure_vars() -> (String, String, String, TypedRel) {
    let (a, b, r) = (fresh("a"), fresh("b"), fresh("R"));
    let rv = TypedRel::var(&r, Type::var(&a), Type::var(&b));
    (a, b, r, rv)
}

/// `f_{s,s'} : s * s' -o all a. (s -o s' -o a) -o a`.
fn tensor_map(s: &Type, s2: &Type) -> Term {
    let (x, x1, x2, a, h) = (fresh("x"), fresh("x'"), fresh("x''"), fresh("a"), fresh("h"));
    let h_ty = Type::lolli(s.clone(), Type::lolli(s2.clone(), Type::var(&a)));
    let body = ty_lam(&a, lam(&h, h_ty, Term::apps(var(&h), [var(&x1), var(&x2)])));
    lam(
        &x,
        Type::tensor(s.clone(), s2.clone()),
        let_tensor(&x1, &x2, Some((s.clone(), s2.clone())), var(&x), body),
    )
}

/// `(f, f)^* all (a, b, R). (r -o r' -o R) -o R` with `f` the tensor map.
pub fn tensor(r: &TypedRel, r2: &TypedRel) -> TypedRel {
    let (a, b, name, rv) = closure_vars();
    let inner = lolli(&lolli(r, &lolli(r2, &rv)), &rv);
    let closed = forall_rel(&a, &b, &name, &inner);
    let dom = Type::tensor(r.dom.clone(), r2.dom.clone());
    let cod = Type::tensor(r.cod.clone(), r2.cod.clone());
    reindex(&closed, &tensor_map(&r.dom, &r2.dom), &dom, &tensor_map(&r.cod, &r2.cod), &cod)
}

/// `(f, f)^* all (a, b, R). R -o R` with `f = fn x:I. let <> = x in id`.
pub fn unit() -> TypedRel {
    let (a, b, name, rv) = closure_vars();
    let closed = forall_rel(&a, &b, &name, &lolli(&rv, &rv));
    let x = fresh("x");
    let c = fresh("a");
    let poly_id = ty_lam(&c, id(Type::var(&c)));
    let f = lam(&x, Type::Unit, let_star(var(&x), poly_id));
    reindex(&closed, &f, &Type::Unit, &f, &Type::Unit)
}

/// `f_s : !s -o all a. (s -> a) -o a`.
fn bang_map(s: &Type) -> Term {
    let (x, a, g) = (fresh("x"), fresh("a"), fresh("g"));
    let g_ty = Type::arrow(s.clone(), Type::var(&a));
    lam(&x, Type::bang(s.clone()), ty_lam(&a, lam(&g, g_ty, Term::app(var(&g), var(&x)))))
}

/// `(f_s, f_t)^* all (a, b, R). (r -> R) -o R`.
pub fn bang(r: &TypedRel) -> TypedRel {
    let (a, b, name, rv) = closure_vars();
    let closed = forall_rel(&a, &b, &name, &lolli(&arrow(r, &rv), &rv));
    let dom = Type::bang(r.dom.clone());
    let cod = Type::bang(r.cod.clone());
    reindex(&closed, &bang_map(&r.dom), &dom, &bang_map(&r.cod), &cod)
}

/// `all x, y. r(x, y) => (!r)(!x, !y)`.
pub fn bang_pairs(r: &TypedRel) -> Prop {
    let (x, y) = (fresh("x"), fresh("y"));
    let hyp = r.apply(var(&x), var(&y));
    let concl = bang(r).apply(Term::bang(var(&x)), Term::bang(var(&y)));
    all_tm(&x, r.dom.clone(), all_tm(&y, r.cod.clone(), Prop::implies(hyp, concl)))
}

/// `r` is contained in its admissible closure.
pub fn closure_contains(r: &TypedRel) -> Prop {
    subrel(r.rel.clone(), closure(r).rel, r.dom.clone(), r.cod.clone())
}

/// The least admissible relation containing `r`:
/// `(x, y). all (a, b, S). all f, g. (r -o S)(f, g) => S(f x, g y)`.
pub fn closure(r: &TypedRel) -> TypedRel {
    let (a, b, s, sv) = closure_vars();
    let (x, y, f, g) = (fresh("x"), fresh("y"), fresh("f"), fresh("g"));
    let premise = lolli(r, &sv).apply(var(&f), var(&g));
    let conclusion = sv.apply(Term::app(var(&f), var(&x)), Term::app(var(&g), var(&y)));
    let body = all_ty(
        &a,
        all_ty(
            &b,
            all_rel(
                &s,
                Type::var(&a),
                Type::var(&b),
                Flavor::AdmRel,
                all_tm(
                    &f,
                    Type::lolli(r.dom.clone(), Type::var(&a)),
                    all_tm(
                        &g,
                        Type::lolli(r.cod.clone(), Type::var(&b)),
                        Prop::implies(premise, conclusion),
                    ),
                ),
            ),
        ),
    );
    TypedRel::new(compr(&x, r.dom.clone(), &y, r.cod.clone(), body), r.dom.clone(), r.cod.clone()).normalized()
}

/// The relational interpretation `ty[args]` of a type whose free type
/// variables are exactly `params`, unfolded structurally into the
/// constructions above.
pub fn type_rel(params: &[String], ty: &Type, args: &[TypedRel]) -> Result<TypedRel, RelError> {
    if params.len() != args.len() {
        return Err(RelError::Arity {
            expected: params.len(),
            found: args.len(),
        });
    }
    if let Some(i) = ty.dangling(Sort::Ty).into_iter().next() {
        return Err(RelError::Ill(format!("dangling type index {i}")));
    }
    if let Some(v) = ty.free_names(Sort::Ty).into_iter().find(|v| !params.contains(v)) {
        return Err(RelError::Ill(format!("type variable `{v}` is not a parameter")));
    }
    let env: Vec<(String, TypedRel)> = params.iter().cloned().zip(args.iter().cloned()).collect();
    Ok(unfold(ty, &env))
}

fn unfold(ty: &Type, env: &[(String, TypedRel)]) -> TypedRel {
    match ty {
        Type::Var(Var::Free(n)) => env
            .iter()
            .rev()
            .find(|(p, _)| p == n)
            .map(|(_, r)| r.clone())
            .expect("parameters were checked"),
        Type::Var(Var::Bound(_)) => unreachable!("opened before unfolding"),
        Type::Unit => unit(),
        Type::Lolli(a, b) => lolli(&unfold(a, env), &unfold(b, env)),
        Type::Tensor(a, b) => tensor(&unfold(a, env), &unfold(b, env)),
        Type::Bang(a) => bang(&unfold(a, env)),
        Type::Forall(h, body) => {
            let (a, b, r) = (fresh(h.as_str()), fresh(&format!("{}'", h.as_str())), fresh("R"));
            let opened = body.open(Sort::Ty, std::slice::from_ref(&a));
            let mut inner = env.to_vec();
            inner.push((a.clone(), TypedRel::var(&r, Type::var(&a), Type::var(&b))));
            let body_rel = unfold(&opened, &inner);
            forall_rel(&a, &b, &r, &body_rel)
        }
    }
}
