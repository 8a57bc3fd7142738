use std::fs;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Instant;

use clap::ValueEnum;
use pilly_core::{print_prop_with, print_type_with, Relation, RelContext, TermContext, Type};
use pilly_encodings as enc;
use pilly_encodings::{EncodingBundle, EncodingError};
use pilly_parser::{parse_file_with, parse_relation_in, parse_term_in, parse_type_in, DeclKind, ParseError, Signature};
use pilly_relations::{identity_extension, lrl, parametricity};
use pilly_rewrite::{equal_typed, normalize_with_unrolls};
use pilly_typecheck::infer;

use crate::report::{Outcome, Record, RunReport};
use crate::run::{admissibility, equality, rewrite_failure, schema_result, sugar, Loaded, Select};
use crate::{CliError, Options};

/// Stack size for worker threads; typing deep encodings recurses deeply.
pub const WORKER_STACK: usize = 256 << 20;

const ARGS: &str = "<args>";

const PRELUDE: &str = "type N = all a. (a -o a) -> a -o a\n";

/// Declarations available to objects given on the command line.
pub fn prelude() -> Signature {
    let ((_, diags), sig) = parse_file_with(PRELUDE, Signature::default());
    debug_assert!(diags.is_empty(), "{diags:?}");
    sig
}

fn with_prelude(file: &Signature) -> Signature {
    let mut sig = prelude();
    sig.types.extend(file.types.clone());
    sig.terms.extend(file.terms.clone());
    sig.rels.extend(file.rels.clone());
    sig
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    Ok(Loaded::parse(&path.display().to_string(), read(path)?))
}

fn arg_error(what: &str, text: &str, e: ParseError) -> CliError {
    CliError::Usage(format!("cannot parse {what} `{text}`: {e}"))
}

/// Runs `f` on a thread with a large stack, turning a panic into an
/// internal error.
pub fn on_worker<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    thread::scope(|s| {
        let h = thread::Builder::new()
            .stack_size(WORKER_STACK)
            .spawn_scoped(s, f)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        h.join().map_err(|p| CliError::Internal(panic_message(p)))
    })
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "worker panicked".into())
}

/// Type checks declarations and runs every directive. Files run in
/// parallel; results are reported in the order the files were given.
pub fn cmd_check(files: &[PathBuf], opts: &Options) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let texts = files.iter().map(|p| read(p).map(|t| (p.display().to_string(), t))).collect::<Result<Vec<_>, _>>()?;
    let parts = thread::scope(|s| {
        let handles = texts
            .into_iter()
            .map(|(name, src)| {
                thread::Builder::new()
                    .stack_size(WORKER_STACK)
                    .spawn_scoped(s, move || Loaded::parse(&name, src).run(Select::All, opts))
                    .map_err(|e| CliError::Internal(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        handles
            .into_iter()
            .map(|h| h.join().map_err(|p| CliError::Internal(panic_message(p))))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let mut report = RunReport::default();
    for p in parts {
        report.extend(p);
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

/// Normalizes the named term declaration, or runs the file's
/// `#normalize` directives when no name is given.
pub fn cmd_normalize(file: &Path, name: Option<&str>, opts: &Options) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let loaded = load(file)?;
    let mut report = match name {
        None => on_worker(|| loaded.run(Select::Directives("normalize"), opts))?,
        Some(n) => {
            let body = loaded
                .file
                .decls
                .iter()
                .find_map(|d| match &d.kind {
                    DeclKind::Term { name, body, .. } if name == n => Some(body.clone()),
                    _ => None,
                })
                .ok_or_else(|| CliError::Usage(format!("{}: no term named `{n}`", loaded.name)))?;
            let rec = Record::new(&loaded.name, "normalize", n);
            let rec = on_worker(|| {
                let t0 = Instant::now();
                let rec = match infer(&TermContext::default(), &body) {
                    Err(e) => rec.fail(e.code(), e.to_string()),
                    Ok(_) => {
                        let cfg = &opts.rewrite;
                        match normalize_with_unrolls(&body, cfg.y_unroll_budget, cfg.fuel, cfg.eta) {
                            Ok(n) => rec.ok(pilly_core::print_term_with(&n.term, sugar())),
                            Err(e) => rewrite_failure(rec, &e),
                        }
                    }
                };
                rec.timed(t0.elapsed())
            })?;
            let mut r = RunReport::default();
            r.records.extend(loaded.parse_errors.iter().cloned());
            r.push(rec);
            r
        }
    };
    report.elapsed = started.elapsed();
    Ok(report)
}

/// Decides `lhs = rhs` by rewriting. Names declared in `file` may be used.
pub fn cmd_equal(file: Option<&Path>, lhs: &str, rhs: &str, opts: &Options) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let mut report = RunReport::default();
    let (source, sig) = match file {
        Some(p) => {
            let l = load(p)?;
            report.records.extend(l.parse_errors.iter().cloned());
            (l.name.clone(), with_prelude(&l.sig))
        }
        None => (ARGS.to_string(), prelude()),
    };
    let a = parse_term_in(lhs, &sig).map_err(|e| arg_error("term", lhs, e))?;
    let b = parse_term_in(rhs, &sig).map_err(|e| arg_error("term", rhs, e))?;
    let rec = Record::new(&source, "equal", format!("{lhs} == {rhs}"));
    let rec = on_worker(|| {
        let t0 = Instant::now();
        equality(rec, equal_typed(&TermContext::default(), &a, &b, &opts.rewrite), opts).timed(t0.elapsed())
    })?;
    report.push(rec);
    report.elapsed = started.elapsed();
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EncodeKind {
    IsoSelf,
    Tensor,
    Unit,
    Zero,
    One,
    Sum,
    Product,
    Nat,
    Exists,
    Mu,
    Nu,
    Rec,
}

impl EncodeKind {
    fn arity(self) -> usize {
        match self {
            EncodeKind::Unit | EncodeKind::Zero | EncodeKind::One | EncodeKind::Nat => 0,
            EncodeKind::Tensor | EncodeKind::Sum | EncodeKind::Product => 2,
            _ => 1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            EncodeKind::IsoSelf => "iso-self",
            EncodeKind::Tensor => "tensor",
            EncodeKind::Unit => "unit",
            EncodeKind::Zero => "zero",
            EncodeKind::One => "one",
            EncodeKind::Sum => "sum",
            EncodeKind::Product => "product",
            EncodeKind::Nat => "nat",
            EncodeKind::Exists => "exists",
            EncodeKind::Mu => "mu",
            EncodeKind::Nu => "nu",
            EncodeKind::Rec => "rec",
        }
    }
}

fn build(kind: EncodeKind, var: &str, tys: &[Type]) -> Result<EncodingBundle, EncodingError> {
    Ok(match kind {
        EncodeKind::IsoSelf => enc::encode_iso_self(&tys[0]),
        EncodeKind::Tensor => enc::encode_tensor(&tys[0], &tys[1]),
        EncodeKind::Unit => enc::encode_unit(),
        EncodeKind::Zero => enc::encode_zero(),
        EncodeKind::One => enc::encode_one(),
        EncodeKind::Sum => enc::encode_sum(&tys[0], &tys[1]),
        EncodeKind::Product => enc::encode_product(&tys[0], &tys[1]),
        EncodeKind::Nat => enc::encode_nat(),
        EncodeKind::Exists => enc::encode_exists(var, &tys[0]),
        EncodeKind::Mu => enc::encode_mu(var, &tys[0])?,
        EncodeKind::Nu => enc::encode_nu(var, &tys[0])?,
        EncodeKind::Rec => enc::encode_rec(var, &tys[0])?,
    })
}

/// Builds an encoding, verifies its combinators, β-laws and schema laws,
/// and optionally writes it out as a source file.
pub fn cmd_encode(
    kind: EncodeKind,
    args: &[String],
    var: &str,
    emit: Option<&Path>,
    opts: &Options,
) -> Result<RunReport, CliError> {
    let started = Instant::now();
    if args.len() != kind.arity() {
        return Err(CliError::Usage(format!(
            "`encode {}` takes {} type argument(s), found {}",
            kind.name(),
            kind.arity(),
            args.len()
        )));
    }
    let sig = prelude();
    let tys = args
        .iter()
        .map(|a| parse_type_in(a, &sig).map_err(|e| arg_error("type", a, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let subject = std::iter::once(kind.name().to_string()).chain(args.iter().cloned()).collect::<Vec<_>>().join(" ");
    let mut report = on_worker(|| encode_report(kind, var, &tys, &subject, emit, opts))?;
    report.elapsed = started.elapsed();
    Ok(report)
}

fn encode_report(kind: EncodeKind, var: &str, tys: &[Type], subject: &str, emit: Option<&Path>, opts: &Options) -> RunReport {
    let mut report = RunReport::default();
    let t0 = Instant::now();
    let head = Record::new(ARGS, "encode", subject);
    let bundle = match build(kind, var, tys) {
        Ok(b) => b,
        Err(e) => {
            report.push(head.fail(e.code(), e.to_string()).timed(t0.elapsed()));
            return report;
        }
    };
    report.push(head.ok(print_type_with(&bundle.defined_type, sugar())).timed(t0.elapsed()));

    let t0 = Instant::now();
    let checked = bundle.verify(&opts.rewrite);
    let each = t0.elapsed() / (checked.combinators.len() + checked.beta_laws.len() + checked.schema_laws.len()).max(1) as u32;
    for (name, res) in checked.combinators {
        let rec = Record::new(ARGS, "combinator", &name);
        let ty = bundle.combinator(&name).map(|c| print_type_with(&c.ty, sugar())).unwrap_or_default();
        report.push(match res {
            Ok(()) => rec.ok(ty),
            Err(e) => rec.fail(e.code(), e.to_string()),
        }.timed(each));
    }
    for (name, res) in checked.beta_laws {
        let mut rec = equality(Record::new(ARGS, "law", &name), res, opts);
        if rec.outcome == Outcome::Ok {
            rec.output = None;
        }
        report.push(rec.timed(each));
    }
    for (name, res) in checked.schema_laws {
        let rec = Record::new(ARGS, "schema", &name);
        let text = bundle
            .schema_laws
            .iter()
            .find(|s| s.name == name)
            .map(|s| print_prop_with(&s.prop, sugar()))
            .unwrap_or_default();
        report.push(match res {
            Ok(()) => rec.ok(text),
            Err(e) => rec.fail(e.code(), e.to_string()),
        }.timed(each));
    }

    if let Some(path) = emit {
        let rec = Record::new(ARGS, "emit", path.display().to_string());
        report.push(match bundle.to_pilly() {
            Err(e) => rec.fail(e.code(), e.to_string()),
            Ok(text) => match fs::write(path, text) {
                Ok(()) => rec.ok(format!("wrote {}", path.display())),
                Err(e) => rec.fail("Io", e.to_string()),
            },
        });
    }
    report
}

/// Derives admissibility of the named relation declaration (or of a
/// closed relation written out), or runs the file's `#admissible`
/// directives when no name is given.
pub fn cmd_admissible(file: &Path, rel: Option<&str>, opts: &Options) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let loaded = load(file)?;
    let mut report = match rel {
        None => on_worker(|| loaded.run(Select::Directives("admissible"), opts))?,
        Some(text) => {
            let (ctx, r): (RelContext, Relation) = match loaded.sig.rels.get(text) {
                Some(found) => found.clone(),
                None => {
                    let sig = with_prelude(&loaded.sig);
                    (RelContext::new(), parse_relation_in(text, &sig).map_err(|e| arg_error("relation", text, e))?)
                }
            };
            let rec = Record::new(&loaded.name, "admissible", text);
            let rec = on_worker(|| {
                let t0 = Instant::now();
                admissibility(rec, &ctx, &r).timed(t0.elapsed())
            })?;
            let mut out = RunReport::default();
            out.records.extend(loaded.parse_errors.iter().cloned());
            out.push(rec);
            out
        }
    };
    report.elapsed = started.elapsed();
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemaKind {
    IdentityExtension,
    Parametricity,
    Lrl,
}

/// Instantiates a schema at a type (or, for `lrl`, a closed term) and
/// checks that the result is a well-formed proposition.
pub fn cmd_schema(
    kind: SchemaKind,
    target: &str,
    subject: Option<&str>,
    file: Option<&Path>,
) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let mut report = RunReport::default();
    let (source, sig) = match file {
        Some(p) => {
            let l = load(p)?;
            report.records.extend(l.parse_errors.iter().cloned());
            (l.name.clone(), with_prelude(&l.sig))
        }
        None => (ARGS.to_string(), prelude()),
    };
    let rec = Record::new(&source, "schema", target);
    let prop = match kind {
        SchemaKind::Lrl => {
            if subject.is_some() {
                return Err(CliError::Usage("`--subject` only applies to the parametricity schema".into()));
            }
            let t = parse_term_in(target, &sig).map_err(|e| arg_error("term", target, e))?;
            on_worker(|| lrl(&TermContext::default(), &t))?
        }
        SchemaKind::IdentityExtension | SchemaKind::Parametricity => {
            let ty = parse_type_in(target, &sig).map_err(|e| arg_error("type", target, e))?;
            if kind == SchemaKind::IdentityExtension {
                if subject.is_some() {
                    return Err(CliError::Usage("`--subject` only applies to the parametricity schema".into()));
                }
                identity_extension(&ty)
            } else {
                let u = subject
                    .map(|s| parse_term_in(s, &sig).map_err(|e| arg_error("term", s, e)))
                    .transpose()?;
                on_worker(|| parametricity(&ty, u.as_ref()))?
            }
        }
    };
    report.push(schema_result(rec, prop).timed(started.elapsed()));
    report.elapsed = started.elapsed();
    Ok(report)
}
