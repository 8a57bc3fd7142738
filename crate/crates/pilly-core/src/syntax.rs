use std::fmt;
use std::hash::{Hash, Hasher};

/// A surface name kept next to a binder so the printer can reuse it.
///
/// Hints never take part in equality or hashing, which makes the derived
/// `PartialEq` on the syntax trees coincide with α-equivalence.
#[derive(Clone, Default)]
pub struct Hint(pub String);

impl Hint {
    pub fn new(name: impl Into<String>) -> Self {
        Hint(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Hint {}

impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl fmt::Debug for Hint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for Hint {
    fn from(s: &str) -> Self {
        Hint(s.to_string())
    }
}

/// Variable occurrence: a de Bruijn index for bound variables or a name for
/// variables bound by a context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Bound(usize),
    Free(String),
}

impl Var {
    pub fn free(name: impl Into<String>) -> Self {
        Var::Free(name.into())
    }
}

/// The single kind. Kept as a type so signatures can mention it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Type,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    Var(Var),
    Unit,
    Lolli(Box<Type>, Box<Type>),
    Tensor(Box<Type>, Box<Type>),
    Bang(Box<Type>),
    Forall(Hint, Box<Type>),
}

impl Type {
    pub fn var(name: impl Into<String>) -> Type {
        Type::Var(Var::free(name))
    }

    pub fn lolli(dom: Type, cod: Type) -> Type {
        Type::Lolli(Box::new(dom), Box::new(cod))
    }

    pub fn tensor(left: Type, right: Type) -> Type {
        Type::Tensor(Box::new(left), Box::new(right))
    }

    pub fn bang(body: Type) -> Type {
        Type::Bang(Box::new(body))
    }

    /// `s -> t`, that is `!s -o t`.
    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::lolli(Type::bang(dom), cod)
    }

    pub fn size(&self) -> usize {
        match self {
            Type::Var(_) | Type::Unit => 1,
            Type::Lolli(a, b) | Type::Tensor(a, b) => 1 + a.size() + b.size(),
            Type::Bang(a) | Type::Forall(_, a) => 1 + a.size(),
        }
    }
}

/// Core terms. Let annotations are optional so that surface terms can omit
/// them; `elaborate` in the checker fills every one of them in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Star,
    Y,
    Lam {
        hint: Hint,
        ty: Type,
        body: Box<Term>,
    },
    App(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Bang(Box<Term>),
    TyLam {
        hint: Hint,
        body: Box<Term>,
    },
    TyApp(Box<Term>, Type),
    LetStar {
        scrut: Box<Term>,
        body: Box<Term>,
    },
    /// Binds two variables: the left one is index 1, the right one index 0.
    LetTensor {
        left: Hint,
        right: Hint,
        annot: Option<(Type, Type)>,
        scrut: Box<Term>,
        body: Box<Term>,
    },
    LetBang {
        hint: Hint,
        annot: Option<Type>,
        scrut: Box<Term>,
        body: Box<Term>,
    },
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(Var::free(name))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    pub fn apps(fun: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    pub fn pair(left: Term, right: Term) -> Term {
        Term::Pair(Box::new(left), Box::new(right))
    }

    pub fn bang(body: Term) -> Term {
        Term::Bang(Box::new(body))
    }

    pub fn ty_app(fun: Term, arg: Type) -> Term {
        Term::TyApp(Box::new(fun), arg)
    }

    pub fn ty_apps(fun: Term, args: impl IntoIterator<Item = Type>) -> Term {
        args.into_iter().fold(fun, Term::ty_app)
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Star | Term::Y => 1,
            Term::Lam { body, .. } | Term::TyLam { body, .. } | Term::Bang(body) => 1 + body.size(),
            Term::TyApp(t, _) => 1 + t.size(),
            Term::App(a, b) | Term::Pair(a, b) => 1 + a.size() + b.size(),
            Term::LetStar { scrut, body }
            | Term::LetTensor { scrut, body, .. }
            | Term::LetBang { scrut, body, .. } => 1 + scrut.size() + body.size(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Rel,
    AdmRel,
}

/// Definable relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Var(Var),
    /// `(x:dom, y:cod). body`; x is term index 1 and y is index 0 in `body`.
    Compr {
        left: Hint,
        dom: Type,
        right: Hint,
        cod: Type,
        body: Box<Prop>,
    },
    /// `body[args]`. The type variables of `body` are exactly the parameters,
    /// bound in order, so the first parameter is the highest index.
    TypeRel {
        params: Vec<Hint>,
        body: Type,
        args: Vec<Relation>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Binder {
    Ty(Hint),
    Tm(Hint, Type),
    Rel {
        hint: Hint,
        dom: Type,
        cod: Type,
        flavor: Flavor,
    },
}

impl Binder {
    pub fn hint(&self) -> &Hint {
        match self {
            Binder::Ty(h) | Binder::Tm(h, _) | Binder::Rel { hint: h, .. } => h,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Prop {
    Eq(Type, Term, Term),
    RelApp(Relation, Term, Term),
    Implies(Box<Prop>, Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Top,
    Bottom,
    Quant(Quantifier, Binder, Box<Prop>),
}

impl Prop {
    pub fn implies(a: Prop, b: Prop) -> Prop {
        Prop::Implies(Box::new(a), Box::new(b))
    }

    pub fn and(a: Prop, b: Prop) -> Prop {
        Prop::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Prop, b: Prop) -> Prop {
        Prop::Or(Box::new(a), Box::new(b))
    }

    /// Right-nested conjunction; `T` when empty.
    pub fn conj(props: impl IntoIterator<Item = Prop>) -> Prop {
        let mut items: Vec<Prop> = props.into_iter().collect();
        let Some(mut acc) = items.pop() else {
            return Prop::Top;
        };
        while let Some(p) = items.pop() {
            acc = Prop::and(p, acc);
        }
        acc
    }
}
