use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn zxopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zxopt")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(code(out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn generated_multiplier_has_the_expected_resources() {
    let dir = TempDir::new().unwrap();
    let m = path(&dir, "m6.qasm");
    assert_eq!(code(&zxopt(&["gen", "multiplier", "--bits", "6", "--out", s(&m)])), 0);
    let r = json(&zxopt(&["stats", "--in", s(&m), "--json"]));
    assert_eq!(r["t_count"], 742);
    assert_eq!(r["qubit_count"], 25);
}

#[test]
fn stats_table_has_the_four_headline_rows() {
    let dir = TempDir::new().unwrap();
    let t = path(&dir, "t.qasm");
    assert_eq!(code(&zxopt(&["gen", "toffoli", "--out", s(&t)])), 0);
    let out = zxopt(&["stats", "--in", s(&t)]);
    let text = String::from_utf8(out.stdout).unwrap();
    for row in ["Number Of Qubits", "Number of Gates", "T-gate count", "Clifford Gate count"] {
        assert!(text.lines().any(|l| l.starts_with(row)), "missing {row}");
    }
    assert!(text.lines().any(|l| l.starts_with("T-gate count") && l.ends_with(" 7")));
}

#[test]
fn optimized_artifact_matches_its_report() {
    let dir = TempDir::new().unwrap();
    let (m, o) = (path(&dir, "m.qasm"), path(&dir, "o.qasm"));
    zxopt(&["gen", "multiplier", "--bits", "2", "--out", s(&m)]);
    let report = json(&zxopt(&["opt", "--in", s(&m), "--out", s(&o), "--json"]));
    let after = json(&zxopt(&["stats", "--in", s(&o), "--json"]));
    assert_eq!(report["after"], after);
    assert_eq!(report["verification"], "equivalent");
    assert!(report["after"]["t_count"].as_u64().unwrap() < report["before"]["t_count"].as_u64().unwrap());
    assert_eq!(code(&zxopt(&["verify", "--a", s(&m), "--b", s(&o)])), 0);
}

#[test]
fn optimization_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let m = path(&dir, "m.qasm");
    zxopt(&["gen", "adder", "--bits", "3", "--out", s(&m)]);
    let mut outputs = Vec::new();
    for name in ["a.qasm", "b.qasm"] {
        let (o, tr) = (path(&dir, name), path(&dir, &format!("{name}.trace")));
        let out = zxopt(&["opt", "--in", s(&m), "--out", s(&o), "--trace", s(&tr), "--no-verify"]);
        assert_eq!(code(&out), 0);
        outputs.push((fs::read(&o).unwrap(), fs::read(&tr).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert!(!outputs[0].1.is_empty());
}

#[test]
fn empty_circuit_passes_through() {
    let dir = TempDir::new().unwrap();
    let e = write(&dir, "e.qasm", "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n");
    let o = path(&dir, "o.qasm");
    let report = json(&zxopt(&["opt", "--in", s(&e), "--out", s(&o), "--json"]));
    assert_eq!(report["t_reduction_percent"], 0.0);
    let after = json(&zxopt(&["stats", "--in", s(&o), "--json"]));
    assert_eq!(after["total_gates"], 0);
    assert_eq!(after["qubit_count"], 3);
}

#[test]
fn inequivalent_circuits_exit_one() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.qasm", "qreg q[2];\nt q[0];\ncx q[0],q[1];\n");
    let b = write(&dir, "b.qasm", "qreg q[2];\ntdg q[0];\ncx q[0],q[1];\n");
    for mode in ["unitary", "basis", "zx"] {
        let out = zxopt(&["verify", "--a", s(&a), "--b", s(&b), "--mode", mode]);
        assert_eq!(code(&out), 1, "{mode}");
    }
    let c = write(&dir, "c.qasm", "qreg q[3];\nt q[0];\n");
    assert_eq!(code(&zxopt(&["verify", "--a", s(&a), "--b", s(&c)])), 1);
}

#[test]
fn errors_map_to_documented_codes() {
    let dir = TempDir::new().unwrap();
    let missing = path(&dir, "missing.qasm");
    let o = path(&dir, "o.qasm");
    assert_eq!(code(&zxopt(&["stats", "--in", s(&missing)])), 3);

    let bad = write(&dir, "bad.qasm", "qreg q[1];\nfoo q[0];\n");
    let out = zxopt(&["stats", "--in", s(&bad)]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("2:"));

    assert_eq!(code(&zxopt(&["stats"])), 2);
    assert_eq!(code(&zxopt(&["gen", "multiplier", "--out", s(&o)])), 2);
    assert_eq!(code(&zxopt(&["gen", "multiplier", "--bits", "1", "--out", s(&o)])), 2);

    let wide = write(&dir, "wide.qasm", "qreg q[13];\nh q[12];\n");
    assert_eq!(code(&zxopt(&["verify", "--a", s(&wide), "--b", s(&wide), "--mode", "unitary"])), 5);
    assert_eq!(code(&zxopt(&["verify", "--a", s(&wide), "--b", s(&wide), "--mode", "basis"])), 0);

    let unwritable = dir.path().join("no/such/dir/o.qasm");
    assert_eq!(code(&zxopt(&["gen", "toffoli", "--out", s(&unwritable)])), 3);
}

#[test]
fn help_documents_exit_codes() {
    let out = zxopt(&["--help"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in ["3  file", "4  input", "5  circuit too wide", "6  optimization"] {
        assert!(text.contains(line), "{line}");
    }
}
