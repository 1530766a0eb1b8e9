//! End-to-end runs of the `hamcover` binary: file round trips, exit codes
//! and replay determinism at the process level.

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hamcover"))
}

#[test]
fn generate_cover_verify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("d.edges");
    let out = bin()
        .args(["generate", "--model", "digraph", "--n", "50", "--p", "0.4", "--seed", "9"])
        .arg("--out")
        .arg(&graph)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let header = fs::read_to_string(&graph).unwrap();
    assert!(header.starts_with("digraph 50 "));

    let cert = dir.path().join("cert");
    let out = bin()
        .args(["cover", "--seed", "3", "--mode", "adaptive"])
        .arg("--input")
        .arg(&graph)
        .arg("--out")
        .arg(&cert)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("RESULT"), "summary line missing: {stdout}");
    assert!(stdout.contains("valid=true"));
    for file in ["manifest", "cycles", "witness", "graph", "audit"] {
        assert!(cert.join(file).exists(), "missing {file}");
    }

    let out = bin()
        .arg("verify")
        .arg("--graph")
        .arg(cert.join("graph"))
        .arg("--cert")
        .arg(&cert)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("valid=true"));
}

#[test]
fn tampered_certificate_fails_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert");
    let out = bin()
        .args(["cover", "--n", "30", "--p", "0.5", "--seed", "5"])
        .arg("--out")
        .arg(&cert)
        .output()
        .unwrap();
    assert!(out.status.success());
    // Drop the first cycle line: coverage must break.
    let cycles = fs::read_to_string(cert.join("cycles")).unwrap();
    let rest: Vec<&str> = cycles.lines().skip(1).collect();
    fs::write(cert.join("cycles"), rest.join("\n")).unwrap();
    let out = bin()
        .arg("verify")
        .arg("--graph")
        .arg(cert.join("graph"))
        .arg("--cert")
        .arg(&cert)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn strict_mode_aborts_with_exit_2_when_preconditions_fail() {
    // Desk-scale (40, 0.4) cannot hand every residual class ten reserved
    // edges, so strict mode must abort with exit code 2.
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["cover", "--n", "40", "--p", "0.4", "--seed", "1", "--mode", "strict"])
        .arg("--out")
        .arg(dir.path().join("cert"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn strict_mode_succeeds_on_a_directed_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("cycle.edges");
    let n = 9;
    let mut text = format!("digraph {n} {n}\n");
    for i in 1..=n {
        text.push_str(&format!("{} {}\n", i, i % n + 1));
    }
    fs::write(&graph, text).unwrap();
    let cert = dir.path().join("cert");
    let out = bin()
        .args(["cover", "--seed", "1", "--mode", "strict"])
        .arg("--input")
        .arg(&graph)
        .arg("--out")
        .arg(&cert)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("delta1=1"));
    assert!(stdout.contains("cover_size=1"));
    assert!(stdout.contains("excess=0"));
}

#[test]
fn replay_produces_byte_identical_directories() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a", "b"] {
        let out = bin()
            .args(["cover", "--n", "50", "--p", "0.3", "--seed", "11"])
            .arg("--out")
            .arg(dir.path().join(name))
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    for file in ["manifest", "cycles", "witness", "graph", "audit"] {
        let a = fs::read(dir.path().join("a").join(file)).unwrap();
        let b = fs::read(dir.path().join("b").join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between replays");
    }
}

#[test]
fn stats_commands_emit_csv() {
    let out = bin()
        .args(["stats", "--task", "two-pow-c", "--n", "20", "--samples", "5000", "--seed", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with("task,n,samples,estimate"));
    assert!(stdout.contains("two-pow-c,20,5000"));

    let out = bin()
        .args(["stats", "--task", "model-eq", "--n", "15", "--p", "0.4", "--samples", "1500", "--seed", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("edge_count"));

    // Sample floors are enforced.
    let out = bin()
        .args(["stats", "--task", "cycle-law", "--n", "10", "--samples", "10", "--seed", "2"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn plan_directory_serializes_forests() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert");
    let plan = dir.path().join("plan");
    let out = bin()
        .args(["cover", "--n", "40", "--p", "0.4", "--seed", "2"])
        .arg("--out")
        .arg(&cert)
        .arg("--plan")
        .arg(&plan)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(plan.join("manifest").exists());
    assert!(plan.join("residual").exists());
    assert!(plan.join("reserved").exists());
    assert!(plan.join("forest.0001").exists());
    let manifest = fs::read_to_string(plan.join("manifest")).unwrap();
    assert!(manifest.contains("t = "));
    assert!(manifest.contains("anchors = "));
    check_edge_list_header(&plan.join("forest.0001"));
}

fn check_edge_list_header(path: &Path) {
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("digraph "));
}
