//! ASCII printer. Output re-parses to an α-equivalent object.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::fresh::surface;
use crate::subst::{Sort, Syntax};
use crate::syntax::{Binder, Flavor, Hint, Prop, Quantifier, Relation, Term, Type, Var};

/// Words the parser treats specially; bound names avoid them.
pub const KEYWORDS: &[&str] = &[
    "fn", "lam", "let", "in", "all", "ex", "Y", "I", "T", "F", "Rel", "AdmRel", "type", "term",
    "rel", "Type",
];

#[derive(Clone, Copy, Debug, Default)]
pub struct PrintOptions {
    /// Print `s -> t` and `lam x:s. t` where the core shape allows it.
    pub sugar: bool,
}

pub fn print_type(t: &Type) -> String {
    Printer::for_root(t, PrintOptions::default()).ty_str(t)
}

pub fn print_term(t: &Term) -> String {
    print_term_with(t, PrintOptions::default())
}

pub fn print_term_with(t: &Term, opts: PrintOptions) -> String {
    let mut p = Printer::for_root(t, opts);
    p.term(t, 0);
    p.out
}

pub fn print_type_with(t: &Type, opts: PrintOptions) -> String {
    Printer::for_root(t, opts).ty_str(t)
}

pub fn print_relation(r: &Relation) -> String {
    let mut p = Printer::for_root(r, PrintOptions::default());
    p.rel(r, false);
    p.out
}

pub fn print_prop(q: &Prop) -> String {
    print_prop_with(q, PrintOptions::default())
}

pub fn print_prop_with(q: &Prop, opts: PrintOptions) -> String {
    let mut p = Printer::for_root(q, opts);
    p.prop(q, 0);
    p.out
}

struct Printer {
    out: String,
    opts: PrintOptions,
    ty: Vec<String>,
    tm: Vec<String>,
    rel: Vec<String>,
    /// Free names per sort, which bound names must not shadow.
    reserved: [BTreeSet<String>; 3],
}

fn slot(s: Sort) -> usize {
    match s {
        Sort::Ty => 0,
        Sort::Tm => 1,
        Sort::Rel => 2,
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Printer {
    fn for_root<S: Syntax>(root: &S, opts: PrintOptions) -> Self {
        Printer {
            out: String::new(),
            opts,
            ty: Vec::new(),
            tm: Vec::new(),
            rel: Vec::new(),
            reserved: [
                root.free_names(Sort::Ty),
                root.free_names(Sort::Tm),
                root.free_names(Sort::Rel),
            ],
        }
    }

    fn stack(&mut self, s: Sort) -> &mut Vec<String> {
        match s {
            Sort::Ty => &mut self.ty,
            Sort::Tm => &mut self.tm,
            Sort::Rel => &mut self.rel,
        }
    }

    fn pick(&self, s: Sort, hint: &Hint) -> String {
        let default = match s {
            Sort::Ty => "a",
            Sort::Tm => "x",
            Sort::Rel => "R",
        };
        let base = surface(hint.as_str());
        let base = if is_ident(base) { base } else { default };
        let stack = match s {
            Sort::Ty => &self.ty,
            Sort::Tm => &self.tm,
            Sort::Rel => &self.rel,
        };
        let taken = |n: &str| {
            KEYWORDS.contains(&n) || stack.iter().any(|m| m == n) || self.reserved[slot(s)].contains(n)
        };
        if !taken(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|n| !taken(n))
            .expect("unbounded search")
    }

    fn push(&mut self, s: Sort, hint: &Hint) -> String {
        let n = self.pick(s, hint);
        self.stack(s).push(n.clone());
        n
    }

    fn pop(&mut self, s: Sort, n: usize) {
        let st = self.stack(s);
        st.truncate(st.len() - n);
    }

    fn var(&mut self, s: Sort, v: &Var) {
        let name = match v {
            Var::Free(x) => x.clone(),
            Var::Bound(i) => {
                let st = self.stack(s);
                match st.len().checked_sub(i + 1) {
                    Some(k) => st[k].clone(),
                    None => format!("?{}", i - st.len()),
                }
            }
        };
        self.out.push_str(&name);
    }

    fn ty_str(&mut self, t: &Type) -> String {
        self.ty(t, 0);
        std::mem::take(&mut self.out)
    }

    fn open(&mut self, needs: bool) {
        if needs {
            self.out.push('(');
        }
    }

    fn close(&mut self, needs: bool) {
        if needs {
            self.out.push(')');
        }
    }

    /// Levels: 0 binder, 1 `-o`, 2 `*`, 3 `!` and atoms.
    fn ty(&mut self, t: &Type, level: u8) {
        match t {
            Type::Var(v) => self.var(Sort::Ty, v),
            Type::Unit => self.out.push('I'),
            Type::Lolli(a, b) => {
                let p = level > 1;
                self.open(p);
                match (&**a, self.opts.sugar) {
                    (Type::Bang(inner), true) => {
                        self.ty(inner, 2);
                        self.out.push_str(" -> ");
                    }
                    _ => {
                        self.ty(a, 2);
                        self.out.push_str(" -o ");
                    }
                }
                self.ty(b, 1);
                self.close(p);
            }
            Type::Tensor(a, b) => {
                let p = level > 2;
                self.open(p);
                self.ty(a, 2);
                self.out.push_str(" * ");
                self.ty(b, 3);
                self.close(p);
            }
            Type::Bang(a) => {
                self.out.push('!');
                self.ty(a, 3);
            }
            Type::Forall(h, body) => {
                let p = level > 0;
                self.open(p);
                let n = self.push(Sort::Ty, h);
                let _ = write!(self.out, "all {n}. ");
                self.ty(body, 0);
                self.pop(Sort::Ty, 1);
                self.close(p);
            }
        }
    }

    /// Levels: 0 binder, 1 `(*)`, 2 application, 3 `!` and atoms.
    fn term(&mut self, t: &Term, level: u8) {
        match t {
            Term::Var(v) => self.var(Sort::Tm, v),
            Term::Star => self.out.push_str("<>"),
            Term::Y => self.out.push('Y'),
            Term::Lam { hint, ty, body } => {
                let p = level > 0;
                self.open(p);
                if let Some((x, inner, inner_ty)) = self.lam_sugar(ty, body) {
                    let lam_var = self.push(Sort::Tm, &Hint::new("y"));
                    let _ = lam_var;
                    let n = self.push(Sort::Tm, &x);
                    let _ = write!(self.out, "lam {n}:");
                    self.ty(&inner_ty, 1);
                    self.out.push_str(". ");
                    self.term(&inner, 0);
                    self.pop(Sort::Tm, 2);
                } else {
                    let n = self.pick(Sort::Tm, hint);
                    let _ = write!(self.out, "fn {n}:");
                    self.ty(ty, 1);
                    self.out.push_str(". ");
                    self.tm.push(n);
                    self.term(body, 0);
                    self.pop(Sort::Tm, 1);
                }
                self.close(p);
            }
            Term::App(f, a) => {
                let p = level > 2;
                self.open(p);
                self.term(f, 2);
                self.out.push(' ');
                self.term(a, 3);
                self.close(p);
            }
            Term::TyApp(f, s) => {
                let p = level > 2;
                self.open(p);
                self.term(f, 2);
                self.out.push_str(" [");
                self.ty(s, 0);
                self.out.push(']');
                self.close(p);
            }
            Term::Pair(a, b) => {
                let p = level > 1;
                self.open(p);
                self.term(a, 1);
                self.out.push_str(" (*) ");
                self.term(b, 2);
                self.close(p);
            }
            Term::Bang(a) => {
                self.out.push('!');
                self.term(a, 3);
            }
            Term::TyLam { hint, body } => {
                let p = level > 0;
                self.open(p);
                let n = self.push(Sort::Ty, hint);
                let _ = write!(self.out, "/\\{n}. ");
                self.term(body, 0);
                self.pop(Sort::Ty, 1);
                self.close(p);
            }
            Term::LetStar { scrut, body } => {
                let p = level > 0;
                self.open(p);
                self.out.push_str("let <> = ");
                self.term(scrut, 0);
                self.out.push_str(" in ");
                self.term(body, 0);
                self.close(p);
            }
            Term::LetTensor {
                left,
                right,
                annot,
                scrut,
                body,
            } => {
                let p = level > 0;
                self.open(p);
                let x = self.pick(Sort::Tm, left);
                self.tm.push(x.clone());
                let y = self.pick(Sort::Tm, right);
                self.tm.pop();
                let _ = write!(self.out, "let {x} (*) {y}");
                if let Some((a, b)) = annot {
                    self.out.push_str(" : ");
                    self.ty(a, 2);
                    self.out.push_str(" * ");
                    self.ty(b, 3);
                }
                self.out.push_str(" = ");
                self.term(scrut, 0);
                self.out.push_str(" in ");
                self.tm.push(x);
                self.tm.push(y);
                self.term(body, 0);
                self.pop(Sort::Tm, 2);
                self.close(p);
            }
            Term::LetBang {
                hint,
                annot,
                scrut,
                body,
            } => {
                let p = level > 0;
                self.open(p);
                let x = self.pick(Sort::Tm, hint);
                let _ = write!(self.out, "let !{x}");
                if let Some(a) = annot {
                    self.out.push_str(" : ");
                    self.ty(a, 1);
                }
                self.out.push_str(" = ");
                self.term(scrut, 0);
                self.out.push_str(" in ");
                self.tm.push(x);
                self.term(body, 0);
                self.pop(Sort::Tm, 1);
                self.close(p);
            }
        }
    }

    /// Recognises `fn y:!s. let !x : s = y in t` with `y` unused in `t`.
    fn lam_sugar(&self, ty: &Type, body: &Term) -> Option<(Hint, Term, Type)> {
        if !self.opts.sugar {
            return None;
        }
        let Type::Bang(s) = ty else { return None };
        match body {
            Term::LetBang {
                hint,
                annot: Some(a),
                scrut,
                body: inner,
            } if a == &**s
                && **scrut == Term::Var(Var::Bound(0))
                && !inner.mentions_index(Sort::Tm, 1) =>
            {
                Some((hint.clone(), (**inner).clone(), a.clone()))
            }
            _ => None,
        }
    }

    fn rel(&mut self, r: &Relation, atomic: bool) {
        match r {
            Relation::Var(v) => self.var(Sort::Rel, v),
            Relation::Compr {
                left,
                dom,
                right,
                cod,
                body,
            } => {
                self.open(atomic);
                let x = self.pick(Sort::Tm, left);
                self.tm.push(x.clone());
                let y = self.pick(Sort::Tm, right);
                let _ = write!(self.out, "({x}:");
                self.ty(dom, 1);
                let _ = write!(self.out, ", {y}:");
                self.ty(cod, 1);
                self.out.push_str("). ");
                self.tm.push(y);
                self.prop(body, 0);
                self.pop(Sort::Tm, 2);
                self.close(atomic);
            }
            Relation::TypeRel { params, body, args } => {
                // The type lives in its own scope: only the parameters.
                let saved = std::mem::take(&mut self.ty);
                let saved_reserved = std::mem::take(&mut self.reserved[0]);
                let names: Vec<String> = params.iter().map(|h| self.push(Sort::Ty, h)).collect();
                self.ty(body, 3);
                self.ty = saved;
                self.reserved[0] = saved_reserved;
                self.out.push('[');
                for (i, (n, a)) in names.iter().zip(args).enumerate() {
                    if i > 0 {
                        self.out.push_str(", ");
                    }
                    let _ = write!(self.out, "{n} := ");
                    self.rel(a, false);
                }
                self.out.push(']');
            }
        }
    }

    /// Levels: 0 quantifier, 1 `=>`, 2 `\/`, 3 `/\`, 4 atoms.
    fn prop(&mut self, q: &Prop, level: u8) {
        match q {
            Prop::Top => self.out.push('T'),
            Prop::Bottom => self.out.push('F'),
            Prop::Eq(s, a, b) => {
                self.term(a, 1);
                self.out.push_str(" =_{");
                self.ty(s, 0);
                self.out.push_str("} ");
                self.term(b, 1);
            }
            Prop::RelApp(r, a, b) => {
                self.rel(r, true);
                self.out.push('(');
                self.term(a, 0);
                self.out.push_str(", ");
                self.term(b, 0);
                self.out.push(')');
            }
            Prop::Implies(a, b) => self.infix(a, " => ", b, level, 1),
            Prop::Or(a, b) => self.infix(a, " \\/ ", b, level, 2),
            Prop::And(a, b) => self.infix(a, " /\\ ", b, level, 3),
            Prop::Quant(k, binder, body) => {
                let p = level > 0;
                self.open(p);
                self.out.push_str(match k {
                    Quantifier::Forall => "all ",
                    Quantifier::Exists => "ex ",
                });
                let sort = match binder {
                    Binder::Ty(h) => {
                        let n = self.pick(Sort::Ty, h);
                        self.out.push_str(&n);
                        self.ty.push(n);
                        Sort::Ty
                    }
                    Binder::Tm(h, t) => {
                        let n = self.pick(Sort::Tm, h);
                        let _ = write!(self.out, "{n}:");
                        self.ty(t, 1);
                        self.tm.push(n);
                        Sort::Tm
                    }
                    Binder::Rel {
                        hint,
                        dom,
                        cod,
                        flavor,
                    } => {
                        let n = self.pick(Sort::Rel, hint);
                        let kw = match flavor {
                            Flavor::Rel => "Rel",
                            Flavor::AdmRel => "AdmRel",
                        };
                        let _ = write!(self.out, "{n} : {kw}(");
                        self.ty(dom, 0);
                        self.out.push_str(", ");
                        self.ty(cod, 0);
                        self.out.push(')');
                        self.rel.push(n);
                        Sort::Rel
                    }
                };
                self.out.push_str(". ");
                self.prop(body, 0);
                self.pop(sort, 1);
                self.close(p);
            }
        }
    }

    fn infix(&mut self, a: &Prop, op: &str, b: &Prop, level: u8, mine: u8) {
        let p = level > mine;
        self.open(p);
        self.prop(a, mine + 1);
        self.out.push_str(op);
        self.prop(b, mine);
        self.close(p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(i: usize) -> Type {
        Type::Var(Var::Bound(i))
    }

    #[test]
    fn prints_forall_with_bang() {
        let t = Type::Forall("a".into(), Box::new(Type::lolli(Type::bang(bv(0)), bv(0))));
        assert_eq!(print_type(&t), "all a. !a -o a");
    }

    #[test]
    fn prints_y_type() {
        let inner = Type::lolli(Type::bang(bv(0)), bv(0));
        let t = Type::Forall("a".into(), Box::new(Type::lolli(Type::bang(inner), bv(0))));
        assert_eq!(print_type(&t), "all a. !(!a -o a) -o a");
    }

    #[test]
    fn bound_names_avoid_free_names() {
        let t = Type::Forall("a".into(), Box::new(Type::lolli(bv(0), Type::var("a"))));
        assert_eq!(print_type(&t), "all a1. a1 -o a");
    }

    #[test]
    fn generated_suffixes_are_stripped() {
        let t = Type::Forall("b%17".into(), Box::new(bv(0)));
        assert_eq!(print_type(&t), "all b. b");
    }

    #[test]
    fn associativity_parentheses() {
        let a = Type::var("a");
        let left = Type::lolli(Type::lolli(a.clone(), a.clone()), a.clone());
        assert_eq!(print_type(&left), "(a -o a) -o a");
        let t = Type::tensor(a.clone(), Type::tensor(a.clone(), a.clone()));
        assert_eq!(print_type(&t), "a * (a * a)");
    }

    #[test]
    fn arrow_sugar_only_on_request() {
        let t = Type::arrow(Type::Unit, Type::Unit);
        assert_eq!(print_type(&t), "!I -o I");
        assert_eq!(print_type_with(&t, PrintOptions { sugar: true }), "I -> I");
    }

    #[test]
    fn application_and_bang() {
        let t = Term::app(Term::bang(Term::var("f")), Term::var("x"));
        assert_eq!(print_term(&t), "!f x");
        let t = Term::bang(Term::app(Term::var("f"), Term::var("x")));
        assert_eq!(print_term(&t), "!(f x)");
    }
}
