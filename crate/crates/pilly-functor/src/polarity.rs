use pilly_core::fresh::{fresh, surface};
use pilly_core::{Sort, Syntax, Type, Var};

/// Where a variable occurs in a type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Polarity {
    pub positive: bool,
    pub negative: bool,
}

impl Polarity {
    pub fn absent(&self) -> bool {
        !self.positive && !self.negative
    }
}

/// Domains of `-o` flip the variance; everything else preserves it.
pub fn polarity(ty: &Type, var: &str) -> Polarity {
    let mut p = Polarity::default();
    walk(ty, var, true, &mut p);
    p
}

fn walk(ty: &Type, var: &str, pos: bool, acc: &mut Polarity) {
    match ty {
        Type::Var(Var::Free(n)) if n == var => {
            if pos {
                acc.positive = true;
            } else {
                acc.negative = true;
            }
        }
        Type::Var(_) | Type::Unit => {}
        Type::Lolli(a, b) => {
            walk(a, var, !pos, acc);
            walk(b, var, pos, acc);
        }
        Type::Tensor(a, b) => {
            walk(a, var, pos, acc);
            walk(b, var, pos, acc);
        }
        Type::Bang(a) | Type::Forall(_, a) => walk(a, var, pos, acc),
    }
}

/// A type whose variable `var` has been split into a negative and a
/// positive copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitType {
    pub original: Type,
    pub split: Type,
    pub negative: String,
    pub positive: String,
}

impl SplitType {
    /// Puts the original variable back in both positions.
    pub fn rejoin(&self, var: &str) -> Type {
        let v = Type::var(var);
        self.split.subst_ty(&self.negative, &v).subst_ty(&self.positive, &v)
    }
}

pub fn split_occurrences(ty: &Type, var: &str) -> SplitType {
    let base = surface(var);
    let negative = fresh(&format!("{base}n"));
    let positive = fresh(&format!("{base}p"));
    let split = rename(ty, var, true, &negative, &positive);
    SplitType {
        original: ty.clone(),
        split,
        negative,
        positive,
    }
}

fn rename(ty: &Type, var: &str, pos: bool, neg_name: &str, pos_name: &str) -> Type {
    let re = |t: &Type, p: bool| rename(t, var, p, neg_name, pos_name);
    match ty {
        Type::Var(Var::Free(n)) if n == var => Type::var(if pos { pos_name } else { neg_name }),
        Type::Var(_) | Type::Unit => ty.clone(),
        Type::Lolli(a, b) => Type::lolli(re(a, !pos), re(b, pos)),
        Type::Tensor(a, b) => Type::tensor(re(a, pos), re(b, pos)),
        Type::Bang(a) => Type::bang(re(a, pos)),
        Type::Forall(h, a) => Type::Forall(h.clone(), Box::new(re(a, pos))),
    }
}

/// Whether `ty` mentions `var` at all.
pub(crate) fn mentions(ty: &Type, var: &str) -> bool {
    ty.mentions_name(Sort::Ty, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pilly_core::print_type;

    fn v(n: &str) -> Type {
        Type::var(n)
    }

    #[test]
    fn polarity_examples() {
        assert_eq!(polarity(&v("a"), "a"), Polarity { positive: true, negative: false });
        let t = Type::lolli(v("a"), v("b"));
        assert_eq!(polarity(&t, "a"), Polarity { positive: false, negative: true });
        let t = Type::lolli(Type::lolli(v("a"), Type::Unit), Type::Unit);
        assert_eq!(polarity(&t, "a"), Polarity { positive: true, negative: false });
    }

    #[test]
    fn split_example() {
        let t = Type::lolli(Type::bang(Type::lolli(v("a"), v("a"))), v("a"));
        let s = split_occurrences(&t, "a");
        let expected = Type::lolli(
            Type::bang(Type::lolli(v(&s.positive), v(&s.negative))),
            v(&s.positive),
        );
        assert_eq!(s.split, expected);
        assert_eq!(s.rejoin("a"), t);
        assert_eq!(print_type(&split_occurrences(&v("b"), "a").split), "b");
    }
}
