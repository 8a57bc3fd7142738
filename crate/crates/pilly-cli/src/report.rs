use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use pilly_parser::{Diagnostic, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Ok,
    Error,
    Unknown,
}

/// A source position; `line` and `col` are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Location {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

impl Location {
    pub fn of(span: Span, src: &str) -> Self {
        let (line, col) = span.line_col(src);
        Location {
            start: span.start,
            end: span.end,
            line,
            col,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diag {
    pub severity: String,
    pub message: String,
    pub span: Option<Location>,
}

impl Diag {
    pub fn error(message: impl Into<String>, span: Option<Location>) -> Self {
        Diag {
            severity: "error".into(),
            message: message.into(),
            span,
        }
    }

    pub fn warning(message: impl Into<String>, span: Option<Location>) -> Self {
        Diag {
            severity: "warning".into(),
            message: message.into(),
            span,
        }
    }

    pub fn from_parse(d: &Diagnostic, src: &str) -> Self {
        Diag {
            severity: d.severity.to_string(),
            message: d.message.clone(),
            span: Some(Location::of(d.span, src)),
        }
    }
}

/// The result of one directive, declaration or generated check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    /// A file path, or `<args>` for objects given on the command line.
    pub source: String,
    pub kind: String,
    pub subject: String,
    pub outcome: Outcome,
    /// Machine-readable error or result name, e.g. `LinearVariableReused`.
    pub code: Option<String>,
    pub output: Option<String>,
    pub span: Option<Location>,
    pub diagnostics: Vec<Diag>,
    pub elapsed_us: u64,
}

impl Record {
    pub fn new(source: &str, kind: &str, subject: impl Into<String>) -> Self {
        Record {
            source: source.into(),
            kind: kind.into(),
            subject: subject.into(),
            outcome: Outcome::Ok,
            code: None,
            output: None,
            span: None,
            diagnostics: Vec::new(),
            elapsed_us: 0,
        }
    }

    pub fn at(mut self, span: Option<Location>) -> Self {
        self.span = span;
        self
    }

    pub fn ok(mut self, output: impl Into<String>) -> Self {
        self.outcome = Outcome::Ok;
        self.output = Some(output.into());
        self
    }

    pub fn fail(mut self, code: &str, message: impl Into<String>) -> Self {
        self.outcome = Outcome::Error;
        self.code = Some(code.into());
        self.diagnostics.push(Diag::error(message, self.span));
        self
    }

    pub fn unknown(mut self, code: &str, message: impl Into<String>) -> Self {
        self.outcome = Outcome::Unknown;
        self.code = Some(code.into());
        self.diagnostics.push(Diag::warning(message, self.span));
        self
    }

    pub fn timed(mut self, elapsed: Duration) -> Self {
        self.elapsed_us = elapsed.as_micros() as u64;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub ok: usize,
    pub errors: usize,
    pub unknown: usize,
    pub strict: bool,
    pub exit_code: i32,
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    pub records: Vec<Record>,
    pub elapsed: Duration,
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Line<'a> {
    Record(&'a Record),
    Summary(&'a Summary),
}

impl RunReport {
    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: RunReport) {
        self.records.extend(other.records);
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.records.iter().filter(|r| r.outcome == outcome).count()
    }

    pub fn failed(&self, strict: bool) -> bool {
        self.count(Outcome::Error) > 0 || (strict && self.count(Outcome::Unknown) > 0)
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self, strict: bool) -> i32 {
        i32::from(self.failed(strict))
    }

    pub fn summary(&self, strict: bool) -> Summary {
        Summary {
            ok: self.count(Outcome::Ok),
            errors: self.count(Outcome::Error),
            unknown: self.count(Outcome::Unknown),
            strict,
            exit_code: self.exit_code(strict),
            elapsed_us: self.elapsed.as_micros() as u64,
        }
    }

    /// One JSON object per record followed by a summary object.
    pub fn to_json_lines(&self, strict: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(&Line::Record(r)).expect("records serialize"));
            out.push('\n');
        }
        let s = self.summary(strict);
        out.push_str(&serde_json::to_string(&Line::Summary(&s)).expect("summary serializes"));
        out.push('\n');
        out
    }

    pub fn to_text(&self, strict: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            let loc = match r.span {
                Some(l) => format!("{}:{}:{}", r.source, l.line, l.col),
                None => r.source.clone(),
            };
            let status = match (r.outcome, strict) {
                (Outcome::Ok, _) => "ok",
                (Outcome::Error, _) => "error",
                (Outcome::Unknown, true) => "error",
                (Outcome::Unknown, false) => "warning",
            };
            let code = r.code.as_deref().map(|c| format!(" [{c}]")).unwrap_or_default();
            let _ = writeln!(out, "{loc}: {status}: {} {}{code}", r.kind, r.subject);
            if let Some(o) = &r.output {
                for l in o.lines() {
                    let _ = writeln!(out, "    {l}");
                }
            }
            for d in &r.diagnostics {
                let _ = writeln!(out, "    {}: {}", d.severity, d.message);
            }
        }
        let s = self.summary(strict);
        let _ = writeln!(
            out,
            "{} ok, {} failed, {} unknown in {:.1} ms",
            s.ok,
            s.errors,
            s.unknown,
            self.elapsed.as_secs_f64() * 1000.0
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(outcomes: &[Outcome]) -> RunReport {
        let mut r = RunReport::default();
        for &o in outcomes {
            let mut rec = Record::new("f", "check", "x");
            rec.outcome = o;
            r.push(rec);
        }
        r
    }

    #[test]
    fn unknown_only_fails_when_strict() {
        let r = report(&[Outcome::Ok, Outcome::Unknown]);
        assert_eq!(r.exit_code(false), 0);
        assert_eq!(r.exit_code(true), 1);
        assert_eq!(report(&[Outcome::Error]).exit_code(false), 1);
        assert_eq!(report(&[]).exit_code(true), 0);
    }

    #[test]
    fn json_lines_end_with_summary() {
        let text = report(&[Outcome::Ok, Outcome::Error]).to_json_lines(false);
        let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0]["type"], "record");
        assert_eq!(lines[0]["outcome"], "ok");
        assert_eq!(lines[2]["type"], "summary");
        assert_eq!(lines[2]["exit_code"], 1);
    }
}
