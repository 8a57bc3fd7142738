//! Evaluation of the declarations and directives of one source file.

use std::time::Instant;

use pilly_core::{print_prop_with, print_term_with, print_type, PrintOptions, Prop, RelContext, TermContext};
use pilly_parser::{parse_file_with, Decl, DeclKind, Directive, SchemaRequest, Signature, SourceFile};
use pilly_relations::{check_prop, derive_admissible, identity_extension, lrl, parametricity, relation_type, AdmError, RelError};
use pilly_rewrite::{equal_typed, normalize_with_unrolls, EqResult, RewriteError, Unknown};
use pilly_typecheck::{check, infer, kind_check};

use crate::report::{Diag, Location, Outcome, Record, RunReport};
use crate::Options;

const SUBJECT_WIDTH: usize = 72;

pub(crate) fn sugar() -> PrintOptions {
    PrintOptions { sugar: true }
}

/// Which parts of a file to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Select {
    /// Declarations and every directive.
    All,
    /// Only directives with this keyword; declarations are just parsed.
    Directives(&'static str),
}

/// A parsed file with its text, for locating diagnostics.
pub struct Loaded {
    pub name: String,
    pub src: String,
    pub file: SourceFile,
    pub sig: Signature,
    pub parse_errors: Vec<Record>,
}

impl Loaded {
    pub fn parse(name: &str, src: String) -> Loaded {
        let ((file, diags), sig) = parse_file_with(&src, Signature::default());
        let parse_errors = diags
            .iter()
            .map(|d| {
                let loc = Location::of(d.span, &src);
                let mut r = Record::new(name, "parse", "syntax").at(Some(loc));
                r.outcome = Outcome::Error;
                r.code = Some("ParseError".into());
                r.diagnostics.push(Diag::from_parse(d, &src));
                r
            })
            .collect();
        Loaded {
            name: name.into(),
            src,
            file,
            sig,
            parse_errors,
        }
    }

    fn subject(&self, decl: &Decl) -> String {
        let text = self.src.get(decl.span.start..decl.span.end).unwrap_or("");
        subject_of(text)
    }

    pub fn run(&self, select: Select, opts: &Options) -> RunReport {
        let mut report = RunReport::default();
        for r in &self.parse_errors {
            report.push(r.clone());
        }
        for decl in &self.file.decls {
            let wanted = match (&decl.kind, select) {
                (_, Select::All) => true,
                (DeclKind::Directive(d), Select::Directives(k)) => d.keyword() == k,
                _ => false,
            };
            if !wanted {
                continue;
            }
            let loc = Some(Location::of(decl.span, &self.src));
            let base = |kind: &str| Record::new(&self.name, kind, self.subject(decl)).at(loc);
            let started = Instant::now();
            let rec = match &decl.kind {
                DeclKind::Directive(d) => run_directive(base(d.keyword()), d, opts),
                kind => run_decl(base, kind),
            };
            report.push(rec.timed(started.elapsed()));
        }
        report
    }
}

fn subject_of(text: &str) -> String {
    let line = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let line = line.trim_start_matches('#');
    let line = line.split_once(char::is_whitespace).map_or("", |(_, rest)| rest.trim_start());
    if line.chars().count() > SUBJECT_WIDTH {
        let cut: String = line.chars().take(SUBJECT_WIDTH).collect();
        format!("{cut}...")
    } else {
        line.to_string()
    }
}

fn run_decl(base: impl Fn(&str) -> Record, kind: &DeclKind) -> Record {
    match kind {
        DeclKind::Type { params, body, .. } => {
            let rec = base("type");
            match kind_check(params, body) {
                Ok(()) => rec.ok(print_type(body)),
                Err(e) => rec.fail(e.code(), e.to_string()),
            }
        }
        DeclKind::Term { claim, body, .. } => {
            let rec = base("term");
            let ctx = TermContext::default();
            let typed = match claim {
                Some(c) => check(&ctx, body, c),
                None => infer(&ctx, body),
            };
            match typed {
                Ok(t) => rec.ok(print_type(&t.ty)),
                Err(e) => rec.fail(e.code(), e.to_string()),
            }
        }
        DeclKind::Rel { ctx, body, .. } => {
            let rec = base("rel");
            match relation_type(ctx, body) {
                Ok((a, b)) => rec.ok(format!("Rel({}, {})", print_type(&a), print_type(&b))),
                Err(e) => rec.fail(e.code(), e.to_string()),
            }
        }
        DeclKind::Directive(_) => unreachable!("directives are dispatched separately"),
    }
}

pub(crate) fn rewrite_failure(rec: Record, e: &RewriteError) -> Record {
    match e {
        RewriteError::FuelExhausted { steps, .. } => rec.unknown("FuelExhausted", format!("fuel exhausted after {steps} steps")),
        RewriteError::NoYRedex => rec.fail("NoYRedex", e.to_string()),
        RewriteError::TypeMismatch { .. } => rec.fail("TypeMismatch", e.to_string()),
        RewriteError::IllTyped(t) => rec.fail(t.code(), t.to_string()),
    }
}

pub(crate) fn equality(rec: Record, result: Result<EqResult, RewriteError>, opts: &Options) -> Record {
    match result {
        Ok(EqResult::Equal(nf)) => rec.ok(print_term_with(&nf, sugar())),
        Ok(EqResult::NotEqual(l, r)) => rec.fail(
            "NotEqual",
            format!(
                "normal forms differ:\n      {}\n      {}",
                print_term_with(&l, sugar()),
                print_term_with(&r, sugar())
            ),
        ),
        Ok(EqResult::Unknown(Unknown::Fuel)) => rec.unknown("Fuel", format!("fuel {} exhausted", opts.rewrite.fuel)),
        Ok(EqResult::Unknown(Unknown::YBudget)) => rec.unknown(
            "YBudget",
            format!("no common normal form within {} Y unrollings", opts.rewrite.y_unroll_budget),
        ),
        Err(e) => rewrite_failure(rec, &e),
    }
}

pub(crate) fn schema_result(rec: Record, prop: Result<Prop, RelError>) -> Record {
    match prop.and_then(|p| check_prop(&RelContext::new(), &p).map(|()| p)) {
        Ok(p) => rec.ok(print_prop_with(&p, sugar())),
        Err(e) => rec.fail(e.code(), e.to_string()),
    }
}

pub(crate) fn admissibility(rec: Record, ctx: &RelContext, rel: &pilly_core::Relation) -> Record {
    match derive_admissible(ctx, rel) {
        Ok(d) => rec.ok(d.to_string().trim_end()),
        Err(AdmError::NotDerivable { relation, reason }) => rec.fail("NotDerivable", format!("{relation}: {reason}")),
        Err(AdmError::IllFormed(e)) => rec.fail(e.code(), e.to_string()),
    }
}

pub(crate) fn run_directive(rec: Record, d: &Directive, opts: &Options) -> Record {
    let ctx = TermContext::default();
    match d {
        Directive::Check { term, claim } => {
            let typed = match claim {
                Some(c) => check(&ctx, term, c),
                None => infer(&ctx, term),
            };
            match typed {
                Ok(t) => rec.ok(print_type(&t.ty)),
                Err(e) => rec.fail(e.code(), e.to_string()),
            }
        }
        Directive::Normalize(term) => {
            if let Err(e) = infer(&ctx, term) {
                return rec.fail(e.code(), e.to_string());
            }
            let cfg = &opts.rewrite;
            match normalize_with_unrolls(term, cfg.y_unroll_budget, cfg.fuel, cfg.eta) {
                Ok(n) => rec.ok(print_term_with(&n.term, sugar())),
                Err(e) => rewrite_failure(rec, &e),
            }
        }
        Directive::Equal(a, b) => equality(rec, equal_typed(&ctx, a, b, &opts.rewrite), opts),
        Directive::Admissible { ctx, rel, .. } => admissibility(rec, ctx, rel),
        Directive::Schema(req) => schema_result(rec, schema(req)),
    }
}

fn schema(req: &SchemaRequest) -> Result<Prop, RelError> {
    match req {
        SchemaRequest::IdentityExtension(ty) => identity_extension(ty),
        SchemaRequest::Parametricity(ty) => parametricity(ty, None),
        SchemaRequest::Lrl(t) => lrl(&TermContext::default(), t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str) -> RunReport {
        Loaded::parse("t.pilly", src.into()).run(Select::All, &Options::default())
    }

    #[test]
    fn empty_file_is_ok() {
        let r = run("");
        assert!(r.records.is_empty());
        assert_eq!(r.exit_code(false), 0);
    }

    #[test]
    fn y_has_its_type() {
        let r = run("#check Y\n");
        assert_eq!(r.records[0].output.as_deref(), Some("all a. !(!a -o a) -o a"));
    }

    #[test]
    fn parse_errors_have_spans() {
        let r = run("term x = <>\n#check )\n");
        let e = r.records.iter().find(|r| r.kind == "parse").unwrap();
        assert_eq!(e.span.unwrap().line, 2);
    }

    #[test]
    fn long_subjects_are_cut() {
        let s = subject_of(&format!("term {}", "x".repeat(100)));
        assert_eq!(s.chars().count(), SUBJECT_WIDTH + 3);
        assert_eq!(subject_of("\n  #check y\n"), "y");
        assert_eq!(subject_of("term z : I = <>"), "z : I = <>");
    }
}
