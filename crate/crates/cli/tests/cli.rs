use std::path::PathBuf;
use std::process::Command;

use g2_cli::{run_command, EXIT_FAIL, EXIT_USAGE};

struct Run {
    code: u8,
    out: String,
    err: String,
}

fn g2(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("g2").chain(args.iter().copied());
    let code = run_command(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn normalize_straightens_products() {
    let r = g2(&["normalize", "X6*X1"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out.trim(), "s^-3 * X1*X6 - s^-3 * X5");
    // descending order is the basis the product was written in
    assert_eq!(g2(&["normalize", "X6*X1", "--order", "desc"]).out.trim(), "X6*X1");
}

#[test]
fn normalize_moves_between_levels() {
    assert_eq!(g2(&["normalize", "X5", "--level", "1"]).out.trim(), "T5");
    assert_eq!(g2(&["normalize", "T2"]).out.trim(), "T2");
    let up = g2(&["normalize", "T6^-1", "--level", "7"]);
    assert_eq!(up.code, EXIT_USAGE);
    assert!(up.err.starts_with("error:"));
    assert_eq!(g2(&["normalize", "X1", "--level", "9"]).code, EXIT_USAGE);
}

#[test]
fn parse_errors_exit_with_usage() {
    let r = g2(&["normalize", "X1 *"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.out.is_empty());
    assert_eq!(g2(&["normalize", "X7"]).code, EXIT_USAGE);
}

#[test]
fn unknown_commands_and_suites() {
    assert_eq!(g2(&["frobnicate"]).code, EXIT_USAGE);
    let r = g2(&["verify", "lemma-9"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("unknown suite"));
    assert_eq!(g2(&["--help"]).code, 0);
}

#[test]
fn passing_suite() {
    let r = g2(&["verify", "serre"]);
    assert_eq!(r.code, 0);
    assert!(r.err.is_empty());
    let last = r.out.lines().last().unwrap();
    assert_eq!(last, "3 checks: 3 pass, 0 fail, 0 mismatch-reported");
    assert!(r.out.lines().next().unwrap().starts_with("pass "));
}

#[test]
fn reported_mismatches_warn_but_succeed() {
    let r = g2(&["verify", "center"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("mismatch-reported center-form-T3-r: "));
    assert_eq!(r.err.lines().count(), 1);
    assert!(r.err.starts_with("warning: center-form-T3-r differs"));
}

#[test]
fn tower_dump_lists_every_level() {
    let r = g2(&["tower", "dump"]);
    assert_eq!(r.code, 0);
    for l in 1..=7 {
        assert!(
            r.out.lines().any(|x| x.starts_with(&format!("level {l} "))),
            "level {l}"
        );
    }
    assert!(r.out.contains("lambda 6 1 = s^-3"));
}

#[test]
fn decompose_input_files() {
    let r = g2(&["decompose", "--input", &data("d5.txt")]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out.trim(), "g = 0, mu5 = 1, mu6 = 0");

    let r = g2(&["decompose", "--input", &data("broken.txt")]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("line 2"), "{}", r.err);

    let r = g2(&["decompose", "--input", &data("not_a_derivation.txt")]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.err.contains("not a derivation"));

    assert_eq!(g2(&["decompose", "--input", &data("missing.txt")]).code, EXIT_USAGE);
}

#[test]
fn json_report_schema_and_determinism() {
    let a = g2(&["report", "--format", "json"]);
    assert_eq!(a.code, 0, "{}", a.err);
    let v: serde_json::Value = serde_json::from_str(&a.out).unwrap();
    let rows = v.as_array().unwrap();
    assert!(rows.len() > 200);
    for row in rows {
        let obj = row.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["citation", "id", "left", "right", "status"]);
        let status = obj["status"].as_str().unwrap();
        assert!(["pass", "mismatch-reported"].contains(&status), "{row}");
    }
    let warned = a.err.lines().filter(|l| l.starts_with("warning: ")).count();
    let mismatched = rows.iter().filter(|r| r["status"] == "mismatch-reported").count();
    assert_eq!(warned, mismatched);

    let b = g2(&["report", "--format", "json"]);
    assert_eq!(a.out, b.out);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_g2");
    let ok = Command::new(bin).args(["normalize", "e1*e2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(!ok.stdout.is_empty());
    let bad = Command::new(bin).args(["verify"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
