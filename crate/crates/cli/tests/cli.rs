use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn skolem(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skolem"))
        .args(args)
        .current_dir(dir)
        .env_remove("SKOLEM_SOLVER")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn report(dir: &Path) -> Value {
    let text = std::fs::read_to_string(dir.join("skolem-report.json")).expect("report written");
    serde_json::from_str(&text).unwrap()
}

/// One input, one output, `y ↔ x`.
const COPY: &str = "p cnf 2 2\na 1 0\ne 2 0\n1 -2 0\n-1 2 0\n";

#[test]
fn verify_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("copy.qdimacs"), COPY).unwrap();
    std::fs::write(d.path().join("good.skolem"), "skolem 1 1\ng1 = OR(x1,0)\ny1 := g1\n").unwrap();
    std::fs::write(d.path().join("bad.skolem"), "skolem 1 1\ng1 = NOT(x1)\ny1 := g1\n").unwrap();

    let o = skolem(d.path(), &["verify", "copy.qdimacs", "good.skolem"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(d.path())["verdict"], "valid");

    let o = skolem(d.path(), &["verify", "copy.qdimacs", "bad.skolem"]);
    assert_eq!(code(&o), 10);
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.contains("x1 = ") && out.contains("y1 = "), "{out}");
    assert_eq!(report(d.path())["verdict"], "counterexample");
}

#[test]
fn lex_refuses_many_outputs() {
    let d = tempfile::tempdir().unwrap();
    // One input, twenty outputs, each equal to the input.
    let mut s = String::from("p cnf 21 40\na 1 0\ne");
    for v in 2..=21 {
        s.push_str(&format!(" {v}"));
    }
    s.push_str(" 0\n");
    for v in 2..=21 {
        s.push_str(&format!("1 -{v} 0\n-1 {v} 0\n"));
    }
    std::fs::write(d.path().join("wide.qdimacs"), s).unwrap();
    let o = skolem(d.path(), &["synth", "wide.qdimacs", "--strategy", "lex"]);
    assert_eq!(code(&o), 64);
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit"));
}

#[test]
fn usage_errors() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&skolem(d.path(), &["frobnicate"])), 64);
    assert_eq!(code(&skolem(d.path(), &["verify", "missing.qdimacs", "x.skolem"])), 64);
    std::fs::write(d.path().join("copy.qdimacs"), COPY).unwrap();
    let o = skolem(d.path(), &["synth", "copy.qdimacs", "--solver", "bogus"]);
    assert_eq!(code(&o), 64);
}

#[test]
fn interp_exp_emits_three_rows() {
    let d = tempfile::tempdir().unwrap();
    let o = skolem(d.path(), &["interp-exp", "--m", "1..3"]);
    assert_eq!(code(&o), 0);
    let csv = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "m,k,proofLength,interpolantSize,lexFirstSize");
    assert_eq!(lines.len(), 4, "{csv}");
    for (row, m) in lines[1..].iter().zip(1..) {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[0], m.to_string());
        assert_eq!(cells[1], ((1 << m) + 1).to_string());
        assert!(cells.iter().all(|c| !c.is_empty()), "{row}");
    }
}

#[test]
fn gen_then_synth_then_verify() {
    let d = tempfile::tempdir().unwrap();
    let o = skolem(d.path(), &["gen", "bphp", "--k", "3", "--m", "2", "-o", "b.qdimacs", "--ground-truth", "b.json"]);
    assert_eq!(code(&o), 0);
    let truth: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("b.json")).unwrap()).unwrap();
    assert_eq!(truth["negationClauses"], 12);
    assert_eq!(truth["negationWidth"], 6);
    for strategy in ["lex", "cover", "auto"] {
        let o = skolem(d.path(), &["synth", "b.qdimacs", "--strategy", strategy, "-o", "b.skolem"]);
        assert_eq!(code(&o), 0, "{strategy}: {}", String::from_utf8_lossy(&o.stderr));
        let r = report(d.path());
        assert_eq!(r["verdict"], "valid");
        assert_eq!(r["strategy"], strategy);
        assert_eq!(code(&skolem(d.path(), &["verify", "b.qdimacs", "b.skolem"])), 0);
    }
    let o = skolem(d.path(), &["gen", "trap", "--n", "6", "--m", "4", "-o", "t.qdimacs"]);
    assert_eq!(code(&o), 0);
    let o = skolem(d.path(), &["gen", "factor", "--bits", "3", "-o", "f.qdimacs"]);
    assert_eq!(code(&o), 0);
    let o = skolem(d.path(), &["gen", "planted", "--n", "6", "--m", "3", "--k", "2", "-o", "p.qdimacs"]);
    assert_eq!(code(&o), 0);
    let o = skolem(d.path(), &["synth", "p.qdimacs", "--strategy", "cover", "-o", "p.skolem"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn check_unique_codes() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("copy.qdimacs"), COPY).unwrap();
    assert_eq!(code(&skolem(d.path(), &["check-unique", "copy.qdimacs", "--output", "1"])), 0);
    // Four pigeons, two holes: (0,0,1,1) collides in both holes.
    skolem(d.path(), &["gen", "bphp", "--k", "4", "--m", "1", "-o", "b.qdimacs"]);
    let o = skolem(d.path(), &["check-unique", "b.qdimacs", "--output", "1"]);
    assert_eq!(code(&o), 10);
    assert_eq!(report(d.path())["result"]["unique"], false);
}

#[test]
fn count_matches_small_truth() {
    let d = tempfile::tempdir().unwrap();
    // x1 ∨ x2 over three variables, projected on {1, 2}: three models.
    std::fs::write(d.path().join("f.cnf"), "p cnf 3 1\n1 2 0\n").unwrap();
    let o = skolem(d.path(), &["count", "f.cnf", "--project", "1,2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "3");
}

#[test]
fn report_is_deterministic_modulo_timing() {
    let d = tempfile::tempdir().unwrap();
    skolem(d.path(), &["gen", "planted", "--n", "8", "--m", "4", "--k", "3", "--seed", "2", "-o", "p.qdimacs"]);
    let mut reports = Vec::new();
    for _ in 0..2 {
        let o = skolem(d.path(), &["synth", "p.qdimacs", "--strategy", "cover", "--seed", "9", "--json", "-"]);
        assert_eq!(code(&o), 0);
        let mut r: Value = serde_json::from_slice(&o.stdout).unwrap();
        r["elapsedMs"] = Value::Null;
        r["oracle"]["wallTime"] = Value::Null;
        reports.push(r);
    }
    assert_eq!(reports[0], reports[1]);
}

#[cfg(unix)]
#[test]
fn external_timeout_is_a_resource_limit() {
    use std::os::unix::fs::PermissionsExt;
    let d = tempfile::tempdir().unwrap();
    let script = d.path().join("slow.sh");
    std::fs::write(&script, "#!/bin/sh\nsleep 5\n").unwrap();
    std::fs::set_permissions(&script, std::fs::Permissions::from_mode(0o755)).unwrap();
    std::fs::write(d.path().join("copy.qdimacs"), COPY).unwrap();
    std::fs::write(d.path().join("good.skolem"), "skolem 1 1\ng1 = OR(x1,0)\ny1 := g1\n").unwrap();
    let solver = format!("exec:{}", script.display());
    let o = skolem(d.path(), &["verify", "copy.qdimacs", "good.skolem", "--solver", &solver, "--timeout-ms", "200"]);
    assert_eq!(code(&o), 20, "{}", String::from_utf8_lossy(&o.stderr));
}
