use std::collections::HashMap;

use pilly_core::{RelContext, Relation, Term, Type};

use crate::diag::Span;

#[derive(Clone, Debug, Default)]
pub struct SourceFile {
    pub decls: Vec<Decl>,
}

impl SourceFile {
    pub fn directives(&self) -> impl Iterator<Item = (&Directive, Span)> {
        self.decls.iter().filter_map(|d| match &d.kind {
            DeclKind::Directive(x) => Some((x, d.span)),
            _ => None,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Decl {
    pub kind: DeclKind,
    pub span: Span,
}

/// Bodies are stored with earlier declarations already expanded.
#[derive(Clone, Debug)]
pub enum DeclKind {
    Type {
        name: String,
        params: Vec<String>,
        body: Type,
    },
    Term {
        name: String,
        claim: Option<Type>,
        body: Term,
    },
    Rel {
        name: String,
        ctx: RelContext,
        body: Relation,
    },
    Directive(Directive),
}

impl DeclKind {
    pub fn name(&self) -> Option<&str> {
        match self {
            DeclKind::Type { name, .. } | DeclKind::Term { name, .. } | DeclKind::Rel { name, .. } => {
                Some(name)
            }
            DeclKind::Directive(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Directive {
    Check {
        term: Term,
        claim: Option<Type>,
    },
    Normalize(Term),
    Equal(Term, Term),
    Admissible {
        name: Option<String>,
        ctx: RelContext,
        rel: Relation,
    },
    Schema(SchemaRequest),
}

impl Directive {
    pub fn keyword(&self) -> &'static str {
        match self {
            Directive::Check { .. } => "check",
            Directive::Normalize(_) => "normalize",
            Directive::Equal(..) => "equal",
            Directive::Admissible { .. } => "admissible",
            Directive::Schema(_) => "schema",
        }
    }
}

#[derive(Clone, Debug)]
pub enum SchemaRequest {
    IdentityExtension(Type),
    /// A type of the form `all b. s`.
    Parametricity(Type),
    Lrl(Term),
}

/// Declarations visible to later text. Parameterised type declarations are
/// stored with their parameters as free names.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    pub types: HashMap<String, (Vec<String>, Type)>,
    pub terms: HashMap<String, (Option<Type>, Term)>,
    pub rels: HashMap<String, (RelContext, Relation)>,
}

impl Signature {
    pub fn contains(&self, name: &str) -> bool {
        self.types.contains_key(name) || self.terms.contains_key(name) || self.rels.contains_key(name)
    }

    /// Adds the declarations of a parsed file.
    pub fn extend_from(&mut self, file: &SourceFile) {
        for d in &file.decls {
            match &d.kind {
                DeclKind::Type { name, params, body } => {
                    self.types.insert(name.clone(), (params.clone(), body.clone()));
                }
                DeclKind::Term { name, claim, body } => {
                    self.terms.insert(name.clone(), (claim.clone(), body.clone()));
                }
                DeclKind::Rel { name, ctx, body } => {
                    self.rels.insert(name.clone(), (ctx.clone(), body.clone()));
                }
                DeclKind::Directive(_) => {}
            }
        }
    }
}
