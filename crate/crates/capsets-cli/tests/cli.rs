//! End-to-end tests of the `capsets` binary: exit codes, witnesses,
//! round trips between builders and verifiers, and the machine formats.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_capsets"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_cap_failure_prints_the_witness_and_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "line.txt", "0\n1\n2\n");
    let out = run(&["verify", "cap", path_str(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("0+1+2=0"), "{}", stdout(&out));
}

#[test]
fn verify_cap_success_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cap.txt", "00\n01\n10\n");
    let out = run(&["verify", "cap", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn missing_file_and_bad_usage_exit_2() {
    let out = run(&["verify", "cap", "/nonexistent/path.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("/nonexistent/path.txt"));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "admissible"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "01\n0x\n");
    let out = run(&["verify", "cap", path_str(&f)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_chain_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    for m in [2, 3, 5, 8] {
        let f = dir.path().join(format!("chain{m}.txt"));
        let out = run(&["build", "chain", &m.to_string(), "-o", path_str(&f)]);
        assert_eq!(out.status.code(), Some(0));
        let out = run(&["verify", "admissible", path_str(&f), "--recursive"]);
        assert_eq!(out.status.code(), Some(0), "chain({m})");
        let mw = (m.to_string(), (m - 1).to_string());
        let out = run(&[
            "verify",
            "admissible",
            path_str(&f),
            "--constant-weight",
            &mw.0,
            &mw.1,
        ]);
        assert_eq!(out.status.code(), Some(0), "chain({m}) as I(m,m-1)");
    }
}

#[test]
fn build_lowweight_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("lw.txt");
    let out = run(&["build", "lowweight", "5", "2", "-o", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "verify",
        "admissible",
        path_str(&f),
        "--constant-weight",
        "5",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn build_edel6_round_trips_through_verify_extendable() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("e6");
    let out = run(&["build", "edel6", "-o", path_str(&prefix)]);
    assert_eq!(out.status.code(), Some(0));
    let parts: Vec<String> = ["a0", "a1", "a2"]
        .iter()
        .map(|s| format!("{}.{s}", prefix.display()))
        .collect();
    let out = run(&["verify", "extendable", &parts[0], &parts[1], &parts[2]]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    // Serialization fidelity: the files re-parse to the built sizes.
    for (p, expect) in parts.iter().zip([12usize, 112, 112]) {
        let lines = std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .count();
        assert_eq!(lines, expect);
    }
}

#[test]
fn broken_extendable_collection_exits_1_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let a0 = write(dir.path(), "a0.txt", "0\n");
    let a1 = write(dir.path(), "a1.txt", "1\n");
    let a2 = write(dir.path(), "a2.txt", "2\n");
    let out = run(&[
        "verify",
        "extendable",
        path_str(&a0),
        path_str(&a1),
        path_str(&a2),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("0+1+2=0"), "{}", stdout(&out));
}

#[test]
fn verify_meta_on_the_tiny_example() {
    let dir = tempfile::tempdir().unwrap();
    let s0 = write(dir.path(), "s0.txt", "01\n");
    let s1 = write(dir.path(), "s1.txt", "12\n");
    let s2 = write(dir.path(), "s2.txt", "21\n");
    let out = run(&[
        "verify",
        "meta",
        path_str(&s0),
        path_str(&s1),
        path_str(&s2),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn bound_tables_contains_the_headline_row() {
    let out = run(&["bound", "tables"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text
        .lines()
        .find(|l| l.split('\t').any(|c| c == "396"))
        .expect("a dimension-396 row");
    assert!(row.contains("2.217981"), "{row}");
    let row = text
        .lines()
        .find(|l| l.split('\t').any(|c| c == "56232"))
        .expect("a dimension-56232 row");
    assert!(row.contains("2.218021"), "{row}");
}

#[test]
fn bound_plan_evaluates_a_plan_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "plan.txt",
        "base 6 12 112\nrstep 6\nfinal 11 7\n",
    );
    let out = run(&["bound", "plan", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("396") && text.contains("2.217981825"),
        "{text}"
    );

    // --exact appends the full decimal size.
    let out = run(&["bound", "plan", path_str(&f), "--exact"]);
    let text = stdout(&out);
    let size = text.trim_end().rsplit('\t').next().unwrap();
    assert_eq!(size.len(), 137);
    assert!(size.starts_with("99853049"));
}

#[test]
fn bound_limit_reports_alpha_and_limit() {
    let out = run(&["bound", "limit", "6", "12", "112"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("28/31"), "{text}");
    assert!(text.contains("2.233076566"), "{text}");

    let out = run(&["bound", "limit", "6", "12", "112", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["alpha"], "28/31");
}

#[test]
fn sat_encode_then_decode_the_all_negative_model() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("t.cnf");
    let out = run(&["sat", "encode", "2", "1", "-o", path_str(&cnf)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&cnf).unwrap();
    assert!(text.contains("p cnf 2 0"), "{text}");

    let model = write(dir.path(), "model.txt", "-1 -2 0\n");
    let dec = dir.path().join("dec.txt");
    let out = run(&[
        "sat",
        "decode",
        path_str(&model),
        "--instance",
        "2",
        "1",
        "-o",
        path_str(&dec),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let lines: Vec<String> = std::fs::read_to_string(&dec)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(String::from)
        .collect();
    assert_eq!(lines, ["01", "10"]);

    // The decoded file is itself a valid admissible-set certificate.
    let out = run(&[
        "verify",
        "admissible",
        path_str(&dec),
        "--constant-weight",
        "2",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sat_decode_solver_format_and_unsat_handling() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(
        dir.path(),
        "model.txt",
        "c solved\ns SATISFIABLE\nv 1 2 0\n",
    );
    let dec = dir.path().join("dec.txt");
    let out = run(&[
        "sat",
        "decode",
        path_str(&model),
        "--instance",
        "2",
        "1",
        "-o",
        path_str(&dec),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let content = std::fs::read_to_string(&dec).unwrap();
    assert!(content.contains("02\n20\n"), "{content}");

    let unsat = write(dir.path(), "unsat.txt", "s UNSATISFIABLE\n");
    let out = run(&[
        "sat",
        "decode",
        path_str(&unsat),
        "--instance",
        "2",
        "1",
        "-o",
        path_str(&dec),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sat_oracle_verdicts() {
    let out = run(&["sat", "oracle", "4", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("exists"));

    let out = run(&["sat", "oracle", "4", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn extend_count_only_and_materialized_agree() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain2.txt");
    run(&["build", "chain", "2", "-o", path_str(&chain)]);

    let out = run(&[
        "extend",
        path_str(&chain),
        "--triple",
        "edel6",
        "--count-only",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("2688"), "{}", stdout(&out));

    let cap = dir.path().join("cap.txt");
    let out = run(&[
        "extend",
        path_str(&chain),
        "--triple",
        "edel6",
        "-o",
        path_str(&cap),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "cap", path_str(&cap)]);
    assert_eq!(out.status.code(), Some(0));
    let lines = std::fs::read_to_string(&cap).unwrap().lines().count();
    assert_eq!(lines, 2688);
}

#[test]
fn extend_with_explicit_triple_files() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("e6");
    run(&["build", "edel6", "-o", path_str(&prefix)]);
    let chain = dir.path().join("chain2.txt");
    run(&["build", "chain", "2", "-o", path_str(&chain)]);
    let out = run(&[
        "extend",
        path_str(&chain),
        "--triple",
        &format!("{}.a0", prefix.display()),
        &format!("{}.a1", prefix.display()),
        &format!("{}.a2", prefix.display()),
        "--count-only",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("2688"));
}

#[test]
fn extend_over_budget_with_output_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain6.txt");
    run(&["build", "chain", "6", "-o", path_str(&chain)]);
    let cap = dir.path().join("cap.txt");
    let out = run(&[
        "extend",
        path_str(&chain),
        "--triple",
        "edel6",
        "-o",
        path_str(&cap),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("1268886011904"), "{}", stderr(&out));

    // The budget is overridable through the environment.
    let out = bin()
        .args([
            "extend",
            path_str(&chain),
            "--triple",
            "edel6",
            "--count-only",
        ])
        .env("CAPSETS_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1268886011904"));
}

#[test]
fn machine_formats_cover_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "line.txt", "0\n1\n2\n");
    let out = run(&["verify", "cap", path_str(&f), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["witness"], "0+1+2=0");

    let out = run(&["verify", "cap", path_str(&f), "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("fail\t"));
}

#[test]
fn seed_flag_is_accepted_and_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "cap.txt", "00\n01\n10\n");
    let a = run(&["verify", "cap", path_str(&f)]);
    let b = run(&["--seed", "12345", "verify", "cap", path_str(&f)]);
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(stdout(&a), stdout(&b));
}
