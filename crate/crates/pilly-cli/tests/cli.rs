use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use proptest::prelude::*;
use serde_json::Value;

fn pilly() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pilly"))
}

fn run(args: &[&str]) -> Output {
    pilly().args(args).output().expect("binary runs")
}

fn catalog_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn validator() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/report.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{e}: {l}")))
        .collect()
}

fn assert_valid(lines: &[Value]) {
    let v = validator();
    for l in lines {
        if let Err(errors) = v.validate(l) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("{l}: {msgs:?}");
        }
    }
    assert_eq!(lines.last().unwrap()["type"], "summary");
}

#[test]
fn ok_file_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ok.pilly", "term y = Y\n#check y\n");
    let out = run(&["check", &f]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("all a. !(!a -o a) -o a"), "{text}");
}

#[test]
fn empty_file_is_ok() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "empty.pilly", "");
    assert_eq!(run(&["check", &f]).status.code(), Some(0));
}

#[test]
fn failing_directive_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.pilly", "#check fn x:I. <>\n");
    let out = run(&["--json", "check", &f]);
    assert_eq!(out.status.code(), Some(1));
    let lines = json_lines(&out);
    assert_valid(&lines);
    assert_eq!(lines[0]["code"], "LinearVariableUnused");
    assert_eq!(lines[0]["span"]["line"], 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent/file.pilly"]).status.code(), Some(2));
    assert_eq!(run(&["encode", "sum", "I"]).status.code(), Some(2));
    assert_eq!(run(&["equal", "(", "<>"]).status.code(), Some(2));
}

#[cfg(target_os = "linux")]
#[test]
fn unwritable_output_exits_three() {
    let full = fs::OpenOptions::new().write(true).open("/dev/full").unwrap();
    let status = pilly().args(["encode", "unit"]).stdout(Stdio::from(full)).status().unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn unknown_warns_unless_strict() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "fuel.pilly",
        "term id = fn x:I. x\n#normalize id (id (id (id (id <>))))\n",
    );
    let lax = run(&["--fuel", "1", "--json", "normalize", &f]);
    assert_eq!(lax.status.code(), Some(0));
    let lines = json_lines(&lax);
    assert_valid(&lines);
    assert_eq!(lines[0]["outcome"], "unknown");
    assert_eq!(lines[0]["code"], "FuelExhausted");
    assert_eq!(run(&["--fuel", "1", "--strict", "normalize", &f]).status.code(), Some(1));
    assert_eq!(run(&["--strict", "normalize", &f]).status.code(), Some(0));
}

#[test]
fn config_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "fuel.pilly", "term id = fn x:I. x\n#normalize id (id (id <>))\n");
    let cfg = write(dir.path(), "pilly.toml", "fuel = 1\n");
    let from_file = run(&["--config", &cfg, "--strict", "normalize", &f]);
    assert_eq!(from_file.status.code(), Some(1));
    let overridden = run(&["--config", &cfg, "--fuel", "100", "--strict", "normalize", &f]);
    assert_eq!(overridden.status.code(), Some(0));
    let bad = write(dir.path(), "bad.toml", "fule = 1\n");
    assert_eq!(run(&["--config", &bad, "normalize", &f]).status.code(), Some(2));
}

#[test]
fn catalog_from_config_checks_clean() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "pilly.toml",
        &format!("catalog = [{:?}]\n", catalog_dir().display().to_string()),
    );
    let out = run(&["--config", &cfg, "--json", "--strict", "check"]);
    let lines = json_lines(&out);
    assert_valid(&lines);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let files: std::collections::BTreeSet<&str> = lines.iter().filter_map(|l| l["source"].as_str()).collect();
    assert_eq!(files.len(), 10);
}

#[test]
fn equal_decides_by_rewriting() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "nat.pilly",
        "type N = all a. (a -o a) -> a -o a\n\
         term zero : N = /\\a. lam f:a -o a. fn x:a. x\n\
         term succ : N -o N = fn n:N. /\\a. lam f:a -o a. fn x:a. f (n [a] !f x)\n",
    );
    let same = run(&["equal", "--file", &f, "succ zero", "succ zero"]);
    assert_eq!(same.status.code(), Some(0));
    let out = run(&["--json", "equal", "--file", &f, "zero", "succ zero"]);
    assert_eq!(out.status.code(), Some(1));
    let lines = json_lines(&out);
    assert_valid(&lines);
    assert_eq!(lines[0]["code"], "NotEqual");
}

#[test]
fn encode_reports_polarity_violation() {
    let out = run(&["--json", "encode", "mu", "a -o I"]);
    assert_eq!(out.status.code(), Some(1));
    let lines = json_lines(&out);
    assert_valid(&lines);
    assert_eq!(lines[0]["code"], "PolarityViolation");
}

#[test]
fn encode_mu_verifies_and_emits() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("mu.pilly");
    let out = run(&["--json", "encode", "mu", "1 + a", "--emit-bundle", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_valid(&lines);
    let subjects: Vec<&str> = lines.iter().filter_map(|l| l["subject"].as_str()).collect();
    for s in ["fold", "mu_in", "fold-square"] {
        assert!(subjects.contains(&s), "{subjects:?}");
    }
    let check = run(&["--strict", "check", target.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0), "{}", String::from_utf8_lossy(&check.stdout));
}

#[test]
fn open_bundles_are_not_emitted() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("open.pilly");
    let out = run(&["--json", "encode", "iso-self", "b", "--emit-bundle", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let lines = json_lines(&out);
    assert!(lines.iter().any(|l| l["code"] == "OpenBundle"));
    assert!(!target.exists());
}

#[test]
fn admissible_and_schema_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "rels.pilly",
        "rel e (a : Type) = (x:a, y:a). x =_{a} y\n\
         rel raw (a : Type) (R : Rel(a, a)) = (x:a, y:a). R(x, y)\n\
         rel phi (a : Type) (R : Rel(a, a)) = (x:a, y:a). all S : AdmRel(a, a). (all u:a. all v:a. R(u, v) => S(u, v)) => S(x, y)\n",
    );
    assert_eq!(run(&["admissible", &f, "e"]).status.code(), Some(0));
    assert_eq!(run(&["admissible", &f, "phi"]).status.code(), Some(0));
    let out = run(&["--json", "admissible", &f, "raw"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_lines(&out)[0]["code"], "NotDerivable");

    let out = run(&["schema", "parametricity", "all a. (a -> a) -> a", "--subject", "Y"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["schema", "identity-extension", "a"]).status.code(), Some(0));
    assert_eq!(run(&["schema", "identity-extension", "N"]).status.code(), Some(0));
    assert_eq!(run(&["schema", "lrl", "Y"]).status.code(), Some(0));
    assert_eq!(run(&["schema", "parametricity", "I"]).status.code(), Some(1));
}

fn arb_line() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec![
        "term u = <>",
        "#check Y",
        "#check fn x:I. x",
        "#check fn x:I. <>",
        "#check lam x:I. !x",
        "#normalize (fn x:I. x) <>",
        "#equal <> == <>",
        "#equal (fn x:I. x) == (fn y:I. let * = y in <>)",
        "#schema identity-extension a",
        "#schema lrl Y",
        "#admissible (x:I, y:I). x =_{I} y",
        "#check )",
        "rel r (a : Type) = (x:a, y:a). T",
        "#bogus",
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn json_reports_validate(lines in prop::collection::vec(arb_line(), 0..6), strict in any::<bool>()) {
        let dir = tempfile::tempdir().unwrap();
        let f = write(dir.path(), "gen.pilly", &(lines.join("\n") + "\n"));
        let mut args = vec!["--json", "check", f.as_str()];
        if strict {
            args.insert(0, "--strict");
        }
        let out = run(&args);
        let parsed = json_lines(&out);
        assert_valid(&parsed);
        let summary = parsed.last().unwrap();
        prop_assert_eq!(summary["exit_code"].as_i64(), out.status.code().map(i64::from));
        let failed = summary["errors"].as_u64().unwrap() > 0 || (strict && summary["unknown"].as_u64().unwrap() > 0);
        prop_assert_eq!(out.status.code(), Some(i32::from(failed)));
    }
}
