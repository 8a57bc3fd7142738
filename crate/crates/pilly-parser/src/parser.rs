use pilly_core::build;
use pilly_core::{
    Binder, Flavor, Hint, Prop, Quantifier, RelContext, Relation, Sort, Syntax, Term, TermContext,
    Type, Var,
};

use crate::ast::{Decl, DeclKind, Directive, SchemaRequest, Signature, SourceFile};
use crate::diag::{Diagnostic, ParseError, Span};
use crate::lexer::{lex, Tok, Token};

type PResult<T> = Result<T, Diagnostic>;

const RESERVED: &[&str] = &[
    "fn", "lam", "let", "in", "all", "ex", "Y", "I", "T", "F", "Rel", "AdmRel", "type", "term",
    "rel", "Type",
];

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
    sig: Signature,
    ty: Vec<String>,
    tm: Vec<String>,
    rel: Vec<String>,
    furthest: Option<Diagnostic>,
}

struct Mark {
    pos: usize,
    ty: usize,
    tm: usize,
    rel: usize,
}

impl Parser {
    pub fn new(src: &str, sig: Signature) -> Result<Self, ParseError> {
        let toks = lex(src)?;
        Ok(Parser {
            toks,
            pos: 0,
            sig,
            ty: Vec::new(),
            tm: Vec::new(),
            rel: Vec::new(),
            furthest: None,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].span.end
        }
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&mut self, msg: impl Into<String>) -> PResult<T> {
        let d = Diagnostic::error(msg, self.span());
        let further = self
            .furthest
            .as_ref()
            .is_none_or(|f| f.span.start <= d.span.start);
        if further {
            self.furthest = Some(d.clone());
        }
        Err(d)
    }

    fn unexpected<T>(&mut self, wanted: &str) -> PResult<T> {
        let found = self.peek().describe();
        self.err(format!("expected {wanted}, found {found}"))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            let want = t.describe();
            self.unexpected(&want)
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            self.unexpected(&format!("`{kw}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected("an identifier"),
        }
    }

    fn mark(&self) -> Mark {
        Mark {
            pos: self.pos,
            ty: self.ty.len(),
            tm: self.tm.len(),
            rel: self.rel.len(),
        }
    }

    fn reset(&mut self, m: &Mark) {
        self.pos = m.pos;
        self.ty.truncate(m.ty);
        self.tm.truncate(m.tm);
        self.rel.truncate(m.rel);
    }

    fn attempt<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> Option<T> {
        let m = self.mark();
        match f(self) {
            Ok(v) => Some(v),
            Err(_) => {
                self.reset(&m);
                None
            }
        }
    }

    fn lookup(stack: &[String], name: &str) -> Option<usize> {
        stack.iter().rev().position(|n| n == name)
    }

    pub fn at_end(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub fn finish(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    // ---- types ----

    pub fn ty0(&mut self) -> PResult<Type> {
        if self.eat_kw("all") {
            let a = self.ident()?;
            self.expect(Tok::Dot)?;
            self.ty.push(a.clone());
            let body = self.ty0();
            self.ty.pop();
            return Ok(Type::Forall(Hint::new(a), Box::new(body?)));
        }
        let lhs = self.ty_sum()?;
        if self.eat(&Tok::Lolli) {
            let rhs = self.ty0()?;
            return Ok(Type::lolli(lhs, rhs));
        }
        if self.eat(&Tok::Arrow) {
            let rhs = self.ty0()?;
            return Ok(Type::arrow(lhs, rhs));
        }
        Ok(lhs)
    }

    fn ty_sum(&mut self) -> PResult<Type> {
        let mut lhs = self.ty2()?;
        while self.eat(&Tok::Plus) {
            let rhs = self.ty2()?;
            lhs = sum_type(lhs, rhs);
        }
        Ok(lhs)
    }

    fn ty2(&mut self) -> PResult<Type> {
        let mut lhs = self.ty3()?;
        while self.eat(&Tok::Star) {
            let rhs = self.ty3()?;
            lhs = Type::tensor(lhs, rhs);
        }
        Ok(lhs)
    }

    fn ty3(&mut self) -> PResult<Type> {
        if self.eat(&Tok::Bang) {
            return Ok(Type::bang(self.ty3()?));
        }
        self.ty_atom()
    }

    fn ty_atom(&mut self) -> PResult<Type> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.ty0()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Num(0) => {
                self.bump();
                Ok(zero_type())
            }
            Tok::Num(1) => {
                self.bump();
                Ok(Type::Unit)
            }
            Tok::Ident(s) if s == "I" => {
                self.bump();
                Ok(Type::Unit)
            }
            Tok::Ident(_) => {
                let name = self.ident()?;
                if let Some(i) = Self::lookup(&self.ty, &name) {
                    return Ok(Type::Var(Var::Bound(i)));
                }
                if let Some((params, body)) = self.sig.types.get(&name).cloned() {
                    let mut args = Vec::new();
                    if !params.is_empty() {
                        self.expect(Tok::LParen)?;
                        loop {
                            args.push(self.ty0()?);
                            if !self.eat(&Tok::Comma) {
                                break;
                            }
                        }
                        self.expect(Tok::RParen)?;
                        if args.len() != params.len() {
                            return self.err(format!(
                                "type `{name}` expects {} argument(s), found {}",
                                params.len(),
                                args.len()
                            ));
                        }
                    }
                    return Ok(body.subst_tys(&params, &args));
                }
                Ok(Type::var(name))
            }
            _ => self.unexpected("a type"),
        }
    }

    // ---- terms ----

    pub fn tm0(&mut self) -> PResult<Term> {
        let lambda = if self.eat_kw("fn") {
            Some(false)
        } else if self.eat_kw("lam") {
            Some(true)
        } else {
            None
        };
        if let Some(intuitionistic) = lambda {
            let x = self.ident()?;
            self.expect(Tok::Colon)?;
            let ty = self.ty0()?;
            self.expect(Tok::Dot)?;
            self.tm.push(x.clone());
            let body = self.tm0();
            self.tm.pop();
            let body = body?;
            if intuitionistic {
                // Body has x at index 0; rebuild as fn y:!s. let !x : s = y in body.
                let inner = Term::LetBang {
                    hint: Hint::new(x),
                    annot: Some(ty.clone()),
                    scrut: Box::new(Term::Var(Var::Bound(0))),
                    body: Box::new(body.shift_above(Sort::Tm, 1, 1)),
                };
                return Ok(Term::Lam {
                    hint: Hint::new("y"),
                    ty: Type::bang(ty),
                    body: Box::new(inner),
                });
            }
            return Ok(Term::Lam {
                hint: Hint::new(x),
                ty,
                body: Box::new(body),
            });
        }
        if self.eat(&Tok::Lambda) {
            let a = self.ident()?;
            self.expect(Tok::Dot)?;
            self.ty.push(a.clone());
            let body = self.tm0();
            self.ty.pop();
            return Ok(Term::TyLam {
                hint: Hint::new(a),
                body: Box::new(body?),
            });
        }
        if self.eat_kw("let") {
            return self.let_rest();
        }
        self.tm1()
    }

    fn let_rest(&mut self) -> PResult<Term> {
        if self.eat(&Tok::Unit) {
            self.expect(Tok::Eq)?;
            let scrut = self.tm0()?;
            self.expect_kw("in")?;
            let body = self.tm0()?;
            return Ok(Term::LetStar {
                scrut: Box::new(scrut),
                body: Box::new(body),
            });
        }
        if self.eat(&Tok::Bang) {
            let x = self.ident()?;
            let annot = if self.eat(&Tok::Colon) {
                Some(self.ty0()?)
            } else {
                None
            };
            self.expect(Tok::Eq)?;
            let scrut = self.tm0()?;
            self.expect_kw("in")?;
            self.tm.push(x.clone());
            let body = self.tm0();
            self.tm.pop();
            return Ok(Term::LetBang {
                hint: Hint::new(x),
                annot,
                scrut: Box::new(scrut),
                body: Box::new(body?),
            });
        }
        let x = self.ident()?;
        self.expect(Tok::TensorOp)?;
        let y = self.ident()?;
        let annot = if self.eat(&Tok::Colon) {
            let at = self.span();
            match self.ty0()? {
                Type::Tensor(a, b) => Some((*a, *b)),
                _ => {
                    return Err(Diagnostic::error(
                        "a tensor pattern needs an annotation of the form `s * t`",
                        at.join(Span::new(at.start, self.prev_end())),
                    ))
                }
            }
        } else {
            None
        };
        self.expect(Tok::Eq)?;
        let scrut = self.tm0()?;
        self.expect_kw("in")?;
        self.tm.push(x.clone());
        self.tm.push(y.clone());
        let body = self.tm0();
        self.tm.truncate(self.tm.len() - 2);
        Ok(Term::LetTensor {
            left: Hint::new(x),
            right: Hint::new(y),
            annot,
            scrut: Box::new(scrut),
            body: Box::new(body?),
        })
    }

    fn tm1(&mut self) -> PResult<Term> {
        let mut lhs = self.tm2()?;
        while self.eat(&Tok::TensorOp) {
            let rhs = self.tm2()?;
            lhs = Term::pair(lhs, rhs);
        }
        Ok(lhs)
    }

    fn starts_tm3(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => s == "Y" || !RESERVED.contains(&s.as_str()),
            Tok::Unit | Tok::LParen | Tok::Bang => true,
            _ => false,
        }
    }

    fn tm2(&mut self) -> PResult<Term> {
        let mut f = self.tm3()?;
        loop {
            if self.eat(&Tok::LBracket) {
                let s = self.ty0()?;
                self.expect(Tok::RBracket)?;
                f = Term::ty_app(f, s);
            } else if self.starts_tm3() {
                let a = self.tm3()?;
                f = Term::app(f, a);
            } else {
                return Ok(f);
            }
        }
    }

    fn tm3(&mut self) -> PResult<Term> {
        if self.eat(&Tok::Bang) {
            return Ok(Term::bang(self.tm3()?));
        }
        match self.peek().clone() {
            Tok::Unit => {
                self.bump();
                Ok(Term::Star)
            }
            Tok::LParen => {
                self.bump();
                let t = self.tm0()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(s) if s == "Y" => {
                self.bump();
                Ok(Term::Y)
            }
            Tok::Ident(_) => {
                let name = self.ident()?;
                if let Some(i) = Self::lookup(&self.tm, &name) {
                    return Ok(Term::Var(Var::Bound(i)));
                }
                if let Some((_, body)) = self.sig.terms.get(&name) {
                    return Ok(body.clone());
                }
                Ok(Term::var(name))
            }
            _ => self.unexpected("a term"),
        }
    }

    // ---- relations ----

    pub fn rel(&mut self) -> PResult<Relation> {
        if self.peek() == &Tok::LParen
            && matches!(self.peek_at(1), Tok::Ident(_))
            && self.peek_at(2) == &Tok::Colon
        {
            self.bump();
            let x = self.ident()?;
            self.expect(Tok::Colon)?;
            let dom = self.ty0()?;
            self.expect(Tok::Comma)?;
            let y = self.ident()?;
            self.expect(Tok::Colon)?;
            let cod = self.ty0()?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::Dot)?;
            self.tm.push(x.clone());
            self.tm.push(y.clone());
            let body = self.prop0();
            self.tm.truncate(self.tm.len() - 2);
            return Ok(Relation::Compr {
                left: Hint::new(x),
                dom,
                right: Hint::new(y),
                cod,
                body: Box::new(body?),
            });
        }
        self.rel_atom()
    }

    fn rel_atom(&mut self) -> PResult<Relation> {
        if let Some(r) = self.attempt(|p| p.type_rel()) {
            return Ok(r);
        }
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let r = self.rel()?;
                self.expect(Tok::RParen)?;
                Ok(r)
            }
            Tok::Ident(_) => {
                let name = self.ident()?;
                if let Some(i) = Self::lookup(&self.rel, &name) {
                    return Ok(Relation::Var(Var::Bound(i)));
                }
                if let Some((ctx, body)) = self.sig.rels.get(&name).cloned() {
                    if !is_empty_ctx(&ctx) {
                        return self.err(format!(
                            "relation `{name}` has parameters and cannot be used here"
                        ));
                    }
                    return Ok(body);
                }
                Ok(Relation::Var(Var::free(name)))
            }
            _ => self.unexpected("a relation"),
        }
    }

    fn type_rel(&mut self) -> PResult<Relation> {
        let saved = std::mem::take(&mut self.ty);
        let body = self.ty3();
        self.ty = saved;
        let body = body?;
        self.expect(Tok::LBracket)?;
        let mut names = Vec::new();
        let mut args = Vec::new();
        let explicit = matches!(self.peek(), Tok::Ident(_)) && self.peek_at(1) == &Tok::Assign;
        if self.peek() != &Tok::RBracket {
            loop {
                if explicit {
                    names.push(self.ident()?);
                    self.expect(Tok::Assign)?;
                }
                args.push(self.rel()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::RBracket)?;
        let occurring = free_ty_names_in_order(&body);
        let params = if explicit {
            if let Some(missing) = occurring.iter().find(|n| !names.contains(n)) {
                return self.err(format!("type variable `{missing}` is not a parameter"));
            }
            names
        } else {
            occurring
        };
        if params.len() != args.len() {
            return self.err(format!(
                "relational interpretation needs {} relation(s), found {}",
                params.len(),
                args.len()
            ));
        }
        Ok(build::type_rel(&params, body, args))
    }

    // ---- propositions ----

    pub fn prop0(&mut self) -> PResult<Prop> {
        let q = if self.eat_kw("all") {
            Some(Quantifier::Forall)
        } else if self.eat_kw("ex") {
            Some(Quantifier::Exists)
        } else {
            None
        };
        let Some(q) = q else { return self.prop1() };
        let name = self.ident()?;
        let binder = if self.eat(&Tok::Colon) {
            if self.is_kw("Rel") || self.is_kw("AdmRel") {
                let flavor = if self.eat_kw("Rel") {
                    Flavor::Rel
                } else {
                    self.bump();
                    Flavor::AdmRel
                };
                self.expect(Tok::LParen)?;
                let dom = self.ty0()?;
                self.expect(Tok::Comma)?;
                let cod = self.ty0()?;
                self.expect(Tok::RParen)?;
                Binder::Rel {
                    hint: Hint::new(name.clone()),
                    dom,
                    cod,
                    flavor,
                }
            } else {
                Binder::Tm(Hint::new(name.clone()), self.ty0()?)
            }
        } else {
            Binder::Ty(Hint::new(name.clone()))
        };
        self.expect(Tok::Dot)?;
        let stack = match binder {
            Binder::Ty(_) => &mut self.ty,
            Binder::Tm(..) => &mut self.tm,
            Binder::Rel { .. } => &mut self.rel,
        };
        stack.push(name);
        let body = self.prop0();
        match binder {
            Binder::Ty(_) => self.ty.pop(),
            Binder::Tm(..) => self.tm.pop(),
            Binder::Rel { .. } => self.rel.pop(),
        };
        Ok(Prop::Quant(q, binder, Box::new(body?)))
    }

    fn prop1(&mut self) -> PResult<Prop> {
        let lhs = self.prop2()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.prop0()?;
            return Ok(Prop::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn prop2(&mut self) -> PResult<Prop> {
        let lhs = self.prop3()?;
        if self.eat(&Tok::Or) {
            let rhs = self.prop2_or_quant()?;
            return Ok(Prop::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn prop2_or_quant(&mut self) -> PResult<Prop> {
        if self.is_kw("all") || self.is_kw("ex") {
            self.prop0()
        } else {
            self.prop2()
        }
    }

    fn prop3(&mut self) -> PResult<Prop> {
        let lhs = self.prop4()?;
        if self.eat(&Tok::Lambda) {
            let rhs = if self.is_kw("all") || self.is_kw("ex") {
                self.prop0()?
            } else {
                self.prop3()?
            };
            return Ok(Prop::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn prop4(&mut self) -> PResult<Prop> {
        if self.eat_kw("T") {
            return Ok(Prop::Top);
        }
        if self.eat_kw("F") {
            return Ok(Prop::Bottom);
        }
        if let Some(p) = self.attempt(|p| {
            let r = p.rel_atom()?;
            p.expect(Tok::LParen)?;
            let a = p.tm0()?;
            p.expect(Tok::Comma)?;
            let b = p.tm0()?;
            p.expect(Tok::RParen)?;
            Ok(Prop::RelApp(r, a, b))
        }) {
            return Ok(p);
        }
        if self.peek() == &Tok::LParen {
            if let Some(p) = self.attempt(|p| {
                p.bump();
                let inner = p.prop0()?;
                p.expect(Tok::RParen)?;
                if p.peek() == &Tok::EqSub {
                    return p.err("not a proposition");
                }
                Ok(inner)
            }) {
                return Ok(p);
            }
        }
        let lhs = self.tm1()?;
        if self.peek() != &Tok::EqSub {
            if let Some(d) = self.furthest.clone() {
                if d.span.start > self.span().start {
                    return Err(d);
                }
            }
            return self.unexpected("`=_{` or a relation application");
        }
        self.bump();
        self.expect(Tok::LBrace)?;
        let s = self.ty0()?;
        self.expect(Tok::RBrace)?;
        let rhs = self.tm1()?;
        Ok(Prop::Eq(s, lhs, rhs))
    }

    // ---- files ----

    pub fn file(&mut self) -> (SourceFile, Vec<Diagnostic>) {
        let mut decls = Vec::new();
        let mut diags = Vec::new();
        while !self.at_end() {
            let start = self.span().start;
            self.furthest = None;
            match self.decl() {
                Ok(kind) => {
                    let span = Span::new(start, self.prev_end().max(start));
                    if let Some(name) = kind.name() {
                        if self.sig.contains(name) {
                            diags.push(Diagnostic::error(
                                format!("`{name}` is declared twice"),
                                span,
                            ));
                            continue;
                        }
                    }
                    self.register(&kind);
                    decls.push(Decl { kind, span });
                }
                Err(d) => {
                    diags.push(d);
                    self.resync();
                }
            }
        }
        (SourceFile { decls }, diags)
    }

    fn register(&mut self, kind: &DeclKind) {
        match kind {
            DeclKind::Type { name, params, body } => {
                self.sig.types.insert(name.clone(), (params.clone(), body.clone()));
            }
            DeclKind::Term { name, claim, body } => {
                self.sig.terms.insert(name.clone(), (claim.clone(), body.clone()));
            }
            DeclKind::Rel { name, ctx, body } => {
                self.sig.rels.insert(name.clone(), (ctx.clone(), body.clone()));
            }
            DeclKind::Directive(_) => {}
        }
    }

    fn resync(&mut self) {
        self.ty.clear();
        self.tm.clear();
        self.rel.clear();
        loop {
            match self.peek() {
                Tok::Eof | Tok::Directive(..) => return,
                Tok::Ident(s) if matches!(s.as_str(), "type" | "term" | "rel") => return,
                _ => {
                    self.bump();
                }
            }
        }
    }

    fn decl(&mut self) -> PResult<DeclKind> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "type" => {
                self.bump();
                let name = self.ident()?;
                let mut params = Vec::new();
                while let Tok::Ident(p) = self.peek().clone() {
                    if RESERVED.contains(&p.as_str()) {
                        break;
                    }
                    self.bump();
                    params.push(p);
                }
                self.expect(Tok::Eq)?;
                let at = self.span();
                let body = self.ty0()?;
                if let Some(bad) = body.free_names(Sort::Ty).iter().find(|n| !params.contains(n)) {
                    return Err(Diagnostic::error(
                        format!("type variable `{bad}` is not a parameter of `{name}`"),
                        Span::new(at.start, self.prev_end()),
                    ));
                }
                Ok(DeclKind::Type { name, params, body })
            }
            Tok::Ident(s) if s == "term" => {
                self.bump();
                let name = self.ident()?;
                let claim = if self.eat(&Tok::Colon) {
                    Some(self.ty0()?)
                } else {
                    None
                };
                self.expect(Tok::Eq)?;
                let body = self.tm0()?;
                Ok(DeclKind::Term { name, claim, body })
            }
            Tok::Ident(s) if s == "rel" => {
                self.bump();
                let name = self.ident()?;
                let ctx = self.rel_params()?;
                self.expect(Tok::Eq)?;
                let body = self.rel()?;
                Ok(DeclKind::Rel { name, ctx, body })
            }
            Tok::Directive(d, kind) => {
                self.bump();
                let dir = self.directive(&d, kind)?;
                self.expect(Tok::Eol)?;
                Ok(DeclKind::Directive(dir))
            }
            Tok::Ident(s) => self.err(format!("unknown keyword `{s}`")),
            _ => self.unexpected("a declaration"),
        }
    }

    fn rel_params(&mut self) -> PResult<RelContext> {
        let mut ctx = RelContext::new();
        while self.eat(&Tok::LParen) {
            let name = self.ident()?;
            self.expect(Tok::Colon)?;
            if self.eat_kw("Type") {
                ctx = ctx.with_ty_var(name);
            } else if self.is_kw("Rel") || self.is_kw("AdmRel") {
                let flavor = if self.eat_kw("Rel") {
                    Flavor::Rel
                } else {
                    self.bump();
                    Flavor::AdmRel
                };
                self.expect(Tok::LParen)?;
                let dom = self.ty0()?;
                self.expect(Tok::Comma)?;
                let cod = self.ty0()?;
                self.expect(Tok::RParen)?;
                ctx = ctx.with_rel(name, dom, cod, flavor);
            } else {
                let ty = self.ty0()?;
                ctx = ctx.with_term(name, ty);
            }
            self.expect(Tok::RParen)?;
        }
        Ok(ctx)
    }

    fn directive(&mut self, d: &str, kind: Option<String>) -> PResult<Directive> {
        match d {
            "check" => {
                let term = self.tm0()?;
                let claim = if self.eat(&Tok::Colon) {
                    Some(self.ty0()?)
                } else {
                    None
                };
                Ok(Directive::Check { term, claim })
            }
            "normalize" => Ok(Directive::Normalize(self.tm0()?)),
            "equal" => {
                let a = self.tm0()?;
                self.expect(Tok::EqEq)?;
                let b = self.tm0()?;
                Ok(Directive::Equal(a, b))
            }
            "admissible" => {
                if let (Tok::Ident(n), Tok::Eol) = (self.peek().clone(), self.peek_at(1).clone()) {
                    if let Some((ctx, rel)) = self.sig.rels.get(&n).cloned() {
                        self.bump();
                        return Ok(Directive::Admissible {
                            name: Some(n),
                            ctx,
                            rel,
                        });
                    }
                }
                let rel = self.rel()?;
                Ok(Directive::Admissible {
                    name: None,
                    ctx: RelContext::new(),
                    rel,
                })
            }
            "schema" => match kind.as_deref() {
                Some("identity-extension") => {
                    Ok(Directive::Schema(SchemaRequest::IdentityExtension(self.ty0()?)))
                }
                Some("parametricity") => {
                    Ok(Directive::Schema(SchemaRequest::Parametricity(self.ty0()?)))
                }
                Some("lrl") => Ok(Directive::Schema(SchemaRequest::Lrl(self.tm0()?))),
                other => self.err(format!(
                    "unknown schema `{}`; expected identity-extension, parametricity or lrl",
                    other.unwrap_or("")
                )),
            },
            other => self.err(format!("unknown directive `#{other}`")),
        }
    }
}

fn is_empty_ctx(ctx: &RelContext) -> bool {
    ctx.entries.is_empty() && ctx.terms == TermContext::default()
}

/// `s + t`, that is `all a. (s -o a) -> (t -o a) -> a`.
pub fn sum_type(s: Type, t: Type) -> Type {
    let a = Type::Var(Var::Bound(0));
    let s = s.shift_by(1, 0, 0);
    let t = t.shift_by(1, 0, 0);
    Type::Forall(
        Hint::new("a"),
        Box::new(Type::arrow(
            Type::lolli(s, a.clone()),
            Type::arrow(Type::lolli(t, a.clone()), a),
        )),
    )
}

/// `0`, that is `all a. a`.
pub fn zero_type() -> Type {
    Type::Forall(Hint::new("a"), Box::new(Type::Var(Var::Bound(0))))
}

fn free_ty_names_in_order(t: &Type) -> Vec<String> {
    fn go(t: &Type, out: &mut Vec<String>) {
        match t {
            Type::Var(Var::Free(n)) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Type::Var(Var::Bound(_)) | Type::Unit => {}
            Type::Lolli(a, b) | Type::Tensor(a, b) => {
                go(a, out);
                go(b, out);
            }
            Type::Bang(a) | Type::Forall(_, a) => go(a, out),
        }
    }
    let mut out = Vec::new();
    go(t, &mut out);
    out
}

fn one<T>(
    src: &str,
    sig: &Signature,
    f: impl FnOnce(&mut Parser) -> PResult<T>,
) -> Result<T, ParseError> {
    let mut p = Parser::new(src, sig.clone())?;
    let r = f(&mut p).and_then(|v| p.finish().map(|_| v));
    r.map_err(|d| {
        let d = match p.furthest.take() {
            Some(f) if f.span.start > d.span.start => f,
            _ => d,
        };
        ParseError::from(d)
    })
}

pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    parse_type_in(src, &Signature::default())
}

pub fn parse_type_in(src: &str, sig: &Signature) -> Result<Type, ParseError> {
    one(src, sig, |p| p.ty0())
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    parse_term_in(src, &Signature::default())
}

pub fn parse_term_in(src: &str, sig: &Signature) -> Result<Term, ParseError> {
    one(src, sig, |p| p.tm0())
}

pub fn parse_relation(src: &str) -> Result<Relation, ParseError> {
    parse_relation_in(src, &Signature::default())
}

pub fn parse_relation_in(src: &str, sig: &Signature) -> Result<Relation, ParseError> {
    one(src, sig, |p| p.rel())
}

pub fn parse_prop(src: &str) -> Result<Prop, ParseError> {
    parse_prop_in(src, &Signature::default())
}

pub fn parse_prop_in(src: &str, sig: &Signature) -> Result<Prop, ParseError> {
    one(src, sig, |p| p.prop0())
}

/// Parses a whole file, failing if any declaration is rejected.
pub fn parse_file(src: &str) -> Result<SourceFile, ParseError> {
    let (file, diags) = parse_file_lossy(src);
    if diags.is_empty() {
        Ok(file)
    } else {
        Err(ParseError { diagnostics: diags })
    }
}

/// Parses as much as possible, resynchronising at declaration boundaries.
pub fn parse_file_lossy(src: &str) -> (SourceFile, Vec<Diagnostic>) {
    parse_file_with(src, Signature::default()).0
}

/// Parses a file on top of existing declarations and returns the extended
/// signature alongside the file.
pub fn parse_file_with(src: &str, sig: Signature) -> ((SourceFile, Vec<Diagnostic>), Signature) {
    match Parser::new(src, sig.clone()) {
        Ok(mut p) => {
            let out = p.file();
            let sig = p.sig;
            (out, sig)
        }
        Err(e) => ((SourceFile::default(), e.diagnostics), sig),
    }
}
