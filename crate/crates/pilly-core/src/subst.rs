//! Index manipulation shared by every syntactic category.
//!
//! All operations are instances of one traversal that rebuilds a tree and
//! lets a [`VarMap`] decide what happens at each variable occurrence, given
//! how many binders of each sort were crossed on the way down.

use std::collections::BTreeSet;

use crate::syntax::{Binder, Prop, Relation, Term, Type, Var};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Depth {
    pub ty: usize,
    pub tm: usize,
    pub rel: usize,
}

impl Depth {
    fn ty(self, n: usize) -> Depth {
        Depth { ty: self.ty + n, ..self }
    }
    fn tm(self, n: usize) -> Depth {
        Depth { tm: self.tm + n, ..self }
    }
    fn rel(self, n: usize) -> Depth {
        Depth { rel: self.rel + n, ..self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sort {
    Ty,
    Tm,
    Rel,
}

#[doc(hidden)]
pub trait VarMap {
    fn ty_var(&mut self, _v: &Var, _d: Depth) -> Option<Type> {
        None
    }
    fn tm_var(&mut self, _v: &Var, _d: Depth) -> Option<Term> {
        None
    }
    fn rel_var(&mut self, _v: &Var, _d: Depth) -> Option<Relation> {
        None
    }
}

impl Type {
    pub(crate) fn map_vars(&self, m: &mut dyn VarMap, d: Depth) -> Type {
        match self {
            Type::Var(v) => m.ty_var(v, d).unwrap_or_else(|| self.clone()),
            Type::Unit => Type::Unit,
            Type::Lolli(a, b) => Type::lolli(a.map_vars(m, d), b.map_vars(m, d)),
            Type::Tensor(a, b) => Type::tensor(a.map_vars(m, d), b.map_vars(m, d)),
            Type::Bang(a) => Type::bang(a.map_vars(m, d)),
            Type::Forall(h, a) => Type::Forall(h.clone(), Box::new(a.map_vars(m, d.ty(1)))),
        }
    }
}

impl Term {
    pub(crate) fn map_vars(&self, m: &mut dyn VarMap, d: Depth) -> Term {
        let bx = |t: Term| Box::new(t);
        match self {
            Term::Var(v) => m.tm_var(v, d).unwrap_or_else(|| self.clone()),
            Term::Star | Term::Y => self.clone(),
            Term::Lam { hint, ty, body } => Term::Lam {
                hint: hint.clone(),
                ty: ty.map_vars(m, d),
                body: bx(body.map_vars(m, d.tm(1))),
            },
            Term::App(a, b) => Term::app(a.map_vars(m, d), b.map_vars(m, d)),
            Term::Pair(a, b) => Term::pair(a.map_vars(m, d), b.map_vars(m, d)),
            Term::Bang(a) => Term::bang(a.map_vars(m, d)),
            Term::TyLam { hint, body } => Term::TyLam {
                hint: hint.clone(),
                body: bx(body.map_vars(m, d.ty(1))),
            },
            Term::TyApp(t, s) => Term::ty_app(t.map_vars(m, d), s.map_vars(m, d)),
            Term::LetStar { scrut, body } => Term::LetStar {
                scrut: bx(scrut.map_vars(m, d)),
                body: bx(body.map_vars(m, d)),
            },
            Term::LetTensor {
                left,
                right,
                annot,
                scrut,
                body,
            } => Term::LetTensor {
                left: left.clone(),
                right: right.clone(),
                annot: annot
                    .as_ref()
                    .map(|(a, b)| (a.map_vars(m, d), b.map_vars(m, d))),
                scrut: bx(scrut.map_vars(m, d)),
                body: bx(body.map_vars(m, d.tm(2))),
            },
            Term::LetBang {
                hint,
                annot,
                scrut,
                body,
            } => Term::LetBang {
                hint: hint.clone(),
                annot: annot.as_ref().map(|a| a.map_vars(m, d)),
                scrut: bx(scrut.map_vars(m, d)),
                body: bx(body.map_vars(m, d.tm(1))),
            },
        }
    }
}

impl Relation {
    pub(crate) fn map_vars(&self, m: &mut dyn VarMap, d: Depth) -> Relation {
        match self {
            Relation::Var(v) => m.rel_var(v, d).unwrap_or_else(|| self.clone()),
            Relation::Compr {
                left,
                dom,
                right,
                cod,
                body,
            } => Relation::Compr {
                left: left.clone(),
                dom: dom.map_vars(m, d),
                right: right.clone(),
                cod: cod.map_vars(m, d),
                body: Box::new(body.map_vars(m, d.tm(2))),
            },
            // The type body is closed apart from its parameters.
            Relation::TypeRel { params, body, args } => Relation::TypeRel {
                params: params.clone(),
                body: body.clone(),
                args: args.iter().map(|r| r.map_vars(m, d)).collect(),
            },
        }
    }
}

impl Binder {
    fn map_vars(&self, m: &mut dyn VarMap, d: Depth) -> Binder {
        match self {
            Binder::Ty(h) => Binder::Ty(h.clone()),
            Binder::Tm(h, t) => Binder::Tm(h.clone(), t.map_vars(m, d)),
            Binder::Rel {
                hint,
                dom,
                cod,
                flavor,
            } => Binder::Rel {
                hint: hint.clone(),
                dom: dom.map_vars(m, d),
                cod: cod.map_vars(m, d),
                flavor: *flavor,
            },
        }
    }

    fn enter(&self, d: Depth) -> Depth {
        match self {
            Binder::Ty(_) => d.ty(1),
            Binder::Tm(..) => d.tm(1),
            Binder::Rel { .. } => d.rel(1),
        }
    }
}

impl Prop {
    pub(crate) fn map_vars(&self, m: &mut dyn VarMap, d: Depth) -> Prop {
        match self {
            Prop::Eq(s, a, b) => Prop::Eq(s.map_vars(m, d), a.map_vars(m, d), b.map_vars(m, d)),
            Prop::RelApp(r, a, b) => {
                Prop::RelApp(r.map_vars(m, d), a.map_vars(m, d), b.map_vars(m, d))
            }
            Prop::Implies(a, b) => Prop::implies(a.map_vars(m, d), b.map_vars(m, d)),
            Prop::And(a, b) => Prop::and(a.map_vars(m, d), b.map_vars(m, d)),
            Prop::Or(a, b) => Prop::or(a.map_vars(m, d), b.map_vars(m, d)),
            Prop::Top => Prop::Top,
            Prop::Bottom => Prop::Bottom,
            Prop::Quant(q, b, body) => Prop::Quant(
                *q,
                b.map_vars(m, d),
                Box::new(body.map_vars(m, b.enter(d))),
            ),
        }
    }
}

fn bump(i: usize, cutoff: usize, by: isize) -> usize {
    if i >= cutoff {
        let j = i as isize + by;
        assert!(j >= 0, "index shifted below zero");
        j as usize
    } else {
        i
    }
}

/// Shifts the dangling indices of every sort.
struct Shift {
    ty: isize,
    tm: isize,
    rel: isize,
}

impl VarMap for Shift {
    fn ty_var(&mut self, v: &Var, d: Depth) -> Option<Type> {
        match v {
            Var::Bound(i) if self.ty != 0 => Some(Type::Var(Var::Bound(bump(*i, d.ty, self.ty)))),
            _ => None,
        }
    }
    fn tm_var(&mut self, v: &Var, d: Depth) -> Option<Term> {
        match v {
            Var::Bound(i) if self.tm != 0 => Some(Term::Var(Var::Bound(bump(*i, d.tm, self.tm)))),
            _ => None,
        }
    }
    fn rel_var(&mut self, v: &Var, d: Depth) -> Option<Relation> {
        match v {
            Var::Bound(i) if self.rel != 0 => {
                Some(Relation::Var(Var::Bound(bump(*i, d.rel, self.rel))))
            }
            _ => None,
        }
    }
}

/// Values that can stand in for a variable of some sort.
#[derive(Clone, Copy)]
enum Repl<'a> {
    Ty(&'a [Type]),
    Tm(&'a [Term]),
    Rel(&'a [Relation]),
}

impl Repl<'_> {
    fn len(&self) -> usize {
        match self {
            Repl::Ty(v) => v.len(),
            Repl::Tm(v) => v.len(),
            Repl::Rel(v) => v.len(),
        }
    }

    fn sort(&self) -> Sort {
        match self {
            Repl::Ty(_) => Sort::Ty,
            Repl::Tm(_) => Sort::Tm,
            Repl::Rel(_) => Sort::Rel,
        }
    }
}

fn cutoff(d: Depth, s: Sort) -> usize {
    match s {
        Sort::Ty => d.ty,
        Sort::Tm => d.tm,
        Sort::Rel => d.rel,
    }
}

/// Replaces the outermost `n` dangling indices by `args` (the last argument
/// is index 0) and lowers the rest by `n`.
struct Instantiate<'a> {
    args: Repl<'a>,
}

/// Replaces free names of one sort by values.
struct Replace<'a> {
    names: &'a [String],
    args: Repl<'a>,
}

/// Turns free names into dangling indices, the last name becoming index 0.
struct Close<'a> {
    sort: Sort,
    names: &'a [String],
}

macro_rules! sorted_hook {
    ($fn:ident, $sort:path, $ctor:path, $out:ty, $pick:ident) => {
        fn $fn(&mut self, v: &Var, d: Depth) -> Option<$out> {
            if self.sort() != $sort {
                return None;
            }
            let c = cutoff(d, $sort);
            self.on_var(v, c).map(|r| match r {
                Hit::Index(i) => $ctor(Var::Bound(i)),
                Hit::Arg(k) => self.$pick(k, d),
            })
        }
    };
}

enum Hit {
    Index(usize),
    Arg(usize),
}

trait SortedOp {
    fn sort(&self) -> Sort;
    fn on_var(&self, v: &Var, cutoff: usize) -> Option<Hit>;
    fn args(&self) -> Option<Repl<'_>>;

    fn pick_ty(&self, k: usize, d: Depth) -> Type {
        match self.args() {
            Some(Repl::Ty(v)) => v[k].shifted(d),
            _ => unreachable!(),
        }
    }
    fn pick_tm(&self, k: usize, d: Depth) -> Term {
        match self.args() {
            Some(Repl::Tm(v)) => v[k].shifted(d),
            _ => unreachable!(),
        }
    }
    fn pick_rel(&self, k: usize, d: Depth) -> Relation {
        match self.args() {
            Some(Repl::Rel(v)) => v[k].shifted(d),
            _ => unreachable!(),
        }
    }
}

impl SortedOp for Instantiate<'_> {
    fn sort(&self) -> Sort {
        self.args.sort()
    }
    fn on_var(&self, v: &Var, c: usize) -> Option<Hit> {
        let n = self.args.len();
        match v {
            Var::Bound(i) if *i >= c => {
                let k = i - c;
                if k < n {
                    Some(Hit::Arg(n - 1 - k))
                } else {
                    Some(Hit::Index(i - n))
                }
            }
            _ => None,
        }
    }
    fn args(&self) -> Option<Repl<'_>> {
        Some(self.args)
    }
}

impl SortedOp for Replace<'_> {
    fn sort(&self) -> Sort {
        self.args.sort()
    }
    fn on_var(&self, v: &Var, _c: usize) -> Option<Hit> {
        match v {
            Var::Free(x) => self.names.iter().position(|n| n == x).map(Hit::Arg),
            _ => None,
        }
    }
    fn args(&self) -> Option<Repl<'_>> {
        Some(self.args)
    }
}

impl SortedOp for Close<'_> {
    fn sort(&self) -> Sort {
        self.sort
    }
    fn on_var(&self, v: &Var, c: usize) -> Option<Hit> {
        let n = self.names.len();
        match v {
            Var::Free(x) => self
                .names
                .iter()
                .rposition(|m| m == x)
                .map(|p| Hit::Index(c + n - 1 - p)),
            Var::Bound(i) if *i >= c => Some(Hit::Index(i + n)),
            Var::Bound(_) => None,
        }
    }
    fn args(&self) -> Option<Repl<'_>> {
        None
    }
}

macro_rules! impl_varmap_for_sorted {
    ($t:ty) => {
        impl VarMap for $t {
            sorted_hook!(ty_var, Sort::Ty, Type::Var, Type, pick_ty);
            sorted_hook!(tm_var, Sort::Tm, Term::Var, Term, pick_tm);
            sorted_hook!(rel_var, Sort::Rel, Relation::Var, Relation, pick_rel);
        }
    };
}

impl_varmap_for_sorted!(Instantiate<'_>);
impl_varmap_for_sorted!(Replace<'_>);
impl_varmap_for_sorted!(Close<'_>);

/// Collects free names and dangling indices.
#[derive(Default)]
struct Collect {
    names: [BTreeSet<String>; 3],
    dangling: [BTreeSet<usize>; 3],
}

impl Collect {
    fn note(&mut self, s: usize, v: &Var, c: usize) {
        match v {
            Var::Free(x) => {
                self.names[s].insert(x.clone());
            }
            Var::Bound(i) if *i >= c => {
                self.dangling[s].insert(i - c);
            }
            Var::Bound(_) => {}
        }
    }
}

impl VarMap for Collect {
    fn ty_var(&mut self, v: &Var, d: Depth) -> Option<Type> {
        self.note(0, v, d.ty);
        None
    }
    fn tm_var(&mut self, v: &Var, d: Depth) -> Option<Term> {
        self.note(1, v, d.tm);
        None
    }
    fn rel_var(&mut self, v: &Var, d: Depth) -> Option<Relation> {
        self.note(2, v, d.rel);
        None
    }
}

fn sort_slot(s: Sort) -> usize {
    match s {
        Sort::Ty => 0,
        Sort::Tm => 1,
        Sort::Rel => 2,
    }
}

/// Operations available on every syntactic category.
pub trait Syntax: Sized + Clone {
    #[doc(hidden)]
    fn walk(&self, m: &mut dyn VarMap, d: Depth) -> Self;

    /// Adds `d` to every dangling index of the corresponding sort.
    fn shifted(&self, d: Depth) -> Self {
        self.shift_by(d.ty as isize, d.tm as isize, d.rel as isize)
    }

    fn shift_by(&self, ty: isize, tm: isize, rel: isize) -> Self {
        if ty == 0 && tm == 0 && rel == 0 {
            return self.clone();
        }
        self.walk(&mut Shift { ty, tm, rel }, Depth::default())
    }

    /// Shifts dangling indices of one sort that are at least `cutoff`.
    fn shift_above(&self, sort: Sort, cutoff: usize, by: isize) -> Self {
        let mut shift = Shift {
            ty: 0,
            tm: 0,
            rel: 0,
        };
        match sort {
            Sort::Ty => shift.ty = by,
            Sort::Tm => shift.tm = by,
            Sort::Rel => shift.rel = by,
        }
        let mut d = Depth::default();
        match sort {
            Sort::Ty => d.ty = cutoff,
            Sort::Tm => d.tm = cutoff,
            Sort::Rel => d.rel = cutoff,
        }
        self.walk(&mut shift, d)
    }

    fn instantiate_ty(&self, args: &[Type]) -> Self {
        self.walk(&mut Instantiate { args: Repl::Ty(args) }, Depth::default())
    }
    fn instantiate_tm(&self, args: &[Term]) -> Self {
        self.walk(&mut Instantiate { args: Repl::Tm(args) }, Depth::default())
    }
    fn instantiate_rel(&self, args: &[Relation]) -> Self {
        self.walk(&mut Instantiate { args: Repl::Rel(args) }, Depth::default())
    }

    /// Opens binders of `sort` with the given names (last name is index 0).
    fn open(&self, sort: Sort, names: &[String]) -> Self {
        match sort {
            Sort::Ty => {
                let v: Vec<Type> = names.iter().map(Type::var).collect();
                self.instantiate_ty(&v)
            }
            Sort::Tm => {
                let v: Vec<Term> = names.iter().map(Term::var).collect();
                self.instantiate_tm(&v)
            }
            Sort::Rel => {
                let v: Vec<Relation> = names.iter().map(|n| Relation::Var(Var::free(n))).collect();
                self.instantiate_rel(&v)
            }
        }
    }

    /// Inverse of [`Syntax::open`].
    fn close(&self, sort: Sort, names: &[String]) -> Self {
        self.walk(&mut Close { sort, names }, Depth::default())
    }

    fn subst_ty(&self, name: &str, by: &Type) -> Self {
        let names = [name.to_string()];
        let args = std::slice::from_ref(by);
        self.walk(
            &mut Replace {
                names: &names,
                args: Repl::Ty(args),
            },
            Depth::default(),
        )
    }

    fn subst_tm(&self, name: &str, by: &Term) -> Self {
        let names = [name.to_string()];
        let args = std::slice::from_ref(by);
        self.walk(
            &mut Replace {
                names: &names,
                args: Repl::Tm(args),
            },
            Depth::default(),
        )
    }

    fn subst_rel(&self, name: &str, by: &Relation) -> Self {
        let names = [name.to_string()];
        let args = std::slice::from_ref(by);
        self.walk(
            &mut Replace {
                names: &names,
                args: Repl::Rel(args),
            },
            Depth::default(),
        )
    }

    /// Simultaneous substitution of free type names.
    fn subst_tys(&self, names: &[String], by: &[Type]) -> Self {
        self.walk(
            &mut Replace {
                names,
                args: Repl::Ty(by),
            },
            Depth::default(),
        )
    }

    fn free_names(&self, sort: Sort) -> BTreeSet<String> {
        let mut c = Collect::default();
        self.walk(&mut c, Depth::default());
        std::mem::take(&mut c.names[sort_slot(sort)])
    }

    /// Dangling indices of `sort`, relative to the root.
    fn dangling(&self, sort: Sort) -> BTreeSet<usize> {
        let mut c = Collect::default();
        self.walk(&mut c, Depth::default());
        std::mem::take(&mut c.dangling[sort_slot(sort)])
    }

    fn mentions_index(&self, sort: Sort, index: usize) -> bool {
        self.dangling(sort).contains(&index)
    }

    fn mentions_name(&self, sort: Sort, name: &str) -> bool {
        self.free_names(sort).contains(name)
    }

    fn is_locally_closed(&self) -> bool {
        let mut c = Collect::default();
        self.walk(&mut c, Depth::default());
        c.dangling.iter().all(|s| s.is_empty())
    }
}

impl Syntax for Type {
    fn walk(&self, m: &mut dyn VarMap, d: Depth) -> Self {
        self.map_vars(m, d)
    }
}

impl Syntax for Term {
    fn walk(&self, m: &mut dyn VarMap, d: Depth) -> Self {
        self.map_vars(m, d)
    }
}

impl Syntax for Relation {
    fn walk(&self, m: &mut dyn VarMap, d: Depth) -> Self {
        self.map_vars(m, d)
    }
}

impl Syntax for Prop {
    fn walk(&self, m: &mut dyn VarMap, d: Depth) -> Self {
        self.map_vars(m, d)
    }
}

impl Type {
    /// Body of a `Forall` instantiated at `arg`.
    pub fn instantiate(&self, arg: &Type) -> Type {
        self.instantiate_ty(std::slice::from_ref(arg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Hint;

    fn forall(body: Type) -> Type {
        Type::Forall(Hint::new("a"), Box::new(body))
    }

    #[test]
    fn open_close_round_trip() {
        let body = Type::lolli(Type::Var(Var::Bound(0)), Type::var("b"));
        let opened = body.open(Sort::Ty, &["z".into()]);
        assert_eq!(opened, Type::lolli(Type::var("z"), Type::var("b")));
        assert_eq!(opened.close(Sort::Ty, &["z".into()]), body);
    }

    #[test]
    fn instantiate_under_binder_shifts_argument() {
        // all c. (#1 -o #0) instantiated with a dangling #0 must keep it
        // pointing past the inner binder.
        let body = forall(Type::lolli(Type::Var(Var::Bound(1)), Type::Var(Var::Bound(0))));
        let out = body.instantiate(&Type::Var(Var::Bound(0)));
        assert_eq!(
            out,
            forall(Type::lolli(Type::Var(Var::Bound(1)), Type::Var(Var::Bound(0))))
        );
    }

    #[test]
    fn two_binder_order() {
        let body = Term::pair(Term::Var(Var::Bound(1)), Term::Var(Var::Bound(0)));
        let out = body.instantiate_tm(&[Term::var("x"), Term::var("y")]);
        assert_eq!(out, Term::pair(Term::var("x"), Term::var("y")));
        let back = out.close(Sort::Tm, &["x".into(), "y".into()]);
        assert_eq!(back, body);
    }

    #[test]
    fn substitution_is_capture_avoiding() {
        // (all g. g -o a)[a := g] keeps the binder distinct from the free g.
        let t = forall(Type::lolli(Type::Var(Var::Bound(0)), Type::var("a")));
        let out = t.subst_ty("a", &Type::var("g"));
        assert_eq!(out, forall(Type::lolli(Type::Var(Var::Bound(0)), Type::var("g"))));
    }

    #[test]
    fn dangling_indices_are_relative_to_root() {
        let t = forall(Type::lolli(Type::Var(Var::Bound(0)), Type::Var(Var::Bound(2))));
        assert_eq!(t.dangling(Sort::Ty).into_iter().collect::<Vec<_>>(), vec![1]);
    }
}
