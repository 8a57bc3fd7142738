//! Encoded type formers. Binders are fresh, so arguments may mention any
//! free type variable.

use pilly_core::build::forall;
use pilly_core::fresh::{fresh, surface};
use pilly_core::{print_type, Syntax, Term, Type};
use pilly_functor::{apply_action, polarity, Arrow};

use crate::EncodingError;

/// `all a. (s -o a) -> (t -o a) -> a`.
pub fn sum_type(s: &Type, t: &Type) -> Type {
    let a = fresh("a");
    let va = Type::var(&a);
    forall(
        &a,
        Type::arrow(
            Type::lolli(s.clone(), va.clone()),
            Type::arrow(Type::lolli(t.clone(), va.clone()), va),
        ),
    )
}

/// `all a. (s -o a) + (t -o a) -o a`.
pub fn product_type(s: &Type, t: &Type) -> Type {
    let a = fresh("a");
    let va = Type::var(&a);
    let choice = sum_type(&Type::lolli(s.clone(), va.clone()), &Type::lolli(t.clone(), va.clone()));
    forall(&a, Type::lolli(choice, va))
}

/// `all a. a`.
pub fn zero_type() -> Type {
    let a = fresh("a");
    forall(&a, Type::var(&a))
}

/// `all a. (a -o a) -> a -o a`.
pub fn nat_type() -> Type {
    let a = fresh("a");
    let va = Type::var(&a);
    forall(
        &a,
        Type::arrow(Type::lolli(va.clone(), va.clone()), Type::lolli(va.clone(), va)),
    )
}

/// `all b. (all var. body -o b) -o b`.
pub fn exists_type(var: &str, body: &Type) -> Type {
    let b = fresh("b");
    let vb = Type::var(&b);
    forall(&b, Type::lolli(forall(var, Type::lolli(body.clone(), vb.clone())), vb))
}

/// A type with a distinguished variable occurring only positively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub var: String,
    pub body: Type,
}

impl Functor {
    pub fn new(var: &str, body: Type) -> Result<Functor, EncodingError> {
        if polarity(&body, var).negative {
            return Err(EncodingError::PolarityViolation {
                var: surface(var).to_string(),
                found: "negatively",
                ty: print_type(&body),
            });
        }
        Ok(Functor {
            var: var.to_string(),
            body,
        })
    }

    pub fn at(&self, ty: &Type) -> Type {
        self.body.subst_ty(&self.var, ty)
    }

    /// The action of the functor on `g`.
    pub fn map(&self, g: &Arrow) -> Result<Term, EncodingError> {
        let unused = fresh("n");
        Ok(apply_action(&self.body, &unused, &self.var, &Arrow::identity(Type::Unit), g)?)
    }

    /// `all var. (body -o var) -> var`.
    pub fn mu(&self) -> Type {
        let v = Type::var(&self.var);
        forall(&self.var, Type::arrow(Type::lolli(self.body.clone(), v.clone()), v))
    }

    /// `ex var. !(var -o body) * var`.
    pub fn nu(&self) -> Type {
        let v = Type::var(&self.var);
        let body = Type::tensor(Type::bang(Type::lolli(v.clone(), self.body.clone())), v);
        exists_type(&self.var, &body)
    }
}
