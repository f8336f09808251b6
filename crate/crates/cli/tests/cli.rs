use std::path::Path;
use std::process::{Command, Output};

fn ceg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ceg")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn search_order_6_reports_the_energy_8_pair() {
    let out = ceg(&["search", "--problem", "pairs", "--order", "6", "--digits", "50", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 1);
    let lo: f64 = pairs[0]["energy"]["lo"].as_str().unwrap().parse().unwrap();
    let hi: f64 = pairs[0]["energy"]["hi"].as_str().unwrap().parse().unwrap();
    assert!(lo <= 8.0 && 8.0 <= hi);
    assert!(v["stats"]["seconds"].is_null());
}

#[test]
fn repeated_searches_are_byte_identical() {
    for format in ["json", "csv", "text"] {
        let args = ["search", "--problem", "omega", "--order", "6", "--digits", "30", "--format", format];
        let a = ceg(&args);
        let b = ceg(&args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "format {format}");
    }
}

#[test]
fn usage_errors_exit_2_without_writing_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = out.to_str().unwrap();
    for args in [
        vec!["search", "--problem", "pairs", "--order", "6", "--stage-a-tol", "1e-13", "--out", o],
        vec!["search", "--problem", "pairs", "--order", "11", "--out", o],
        vec!["search", "--problem", "pairs", "--out", o],
        vec!["search", "--problem", "pairs", "--order", "6", "--workers", "0", "--out", o],
        vec!["enumerate", "--order", "0", "--out", o],
    ] {
        let r = ceg(&args);
        assert_eq!(code(&r), 2, "{args:?}: {}", String::from_utf8_lossy(&r.stderr));
        assert!(!out.exists(), "{args:?} left a file behind");
    }
    assert_eq!(code(&ceg(&["verify", "--family", "prop3", "--param", "x=1"])), 2);
    assert_eq!(code(&ceg(&["no-such-command"])), 2);
}

#[test]
fn parse_errors_exit_3() {
    assert_eq!(code(&ceg(&["energy", "--graph6", "C!"])), 3);
    assert_eq!(code(&ceg(&["energy", "--file", "/nonexistent/graph.g6"])), 3);
}

#[test]
fn verify_exit_codes() {
    let ok = ceg(&["verify", "--family", "prop3", "--param", "l=6"]);
    assert_eq!(code(&ok), 0);
    let mismatch = ceg(&["verify", "--family", "prop1", "--param", "p=4", "--json"]);
    assert_eq!(code(&mismatch), 1);
    let v: serde_json::Value = serde_json::from_slice(&mismatch.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn energy_of_the_four_cycle() {
    let out = ceg(&["energy", "--graph6", "Cl", "--digits", "10"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("4.0000000000"));
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn convert_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("in.g6");
    let adj = dir.path().join("out.txt");
    let back = dir.path().join("back.g6");
    write(&g6, "Cl\nD~{\n");
    let p = |x: &Path| x.to_str().unwrap().to_string();
    let r = ceg(&["convert", "--from", "graph6", "--to", "adjlist", "--input", &p(&g6), "--out", &p(&adj)]);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
    assert!(std::fs::read_to_string(&adj).unwrap().starts_with("4\n0: 1 3\n"));
    let r = ceg(&["convert", "--from", "adjlist", "--to", "graph6", "--input", &p(&adj), "--out", &p(&back)]);
    assert_eq!(code(&r), 0);
    assert_eq!(std::fs::read_to_string(&back).unwrap(), "Cl\nD~{\n");
}

#[test]
fn enumerate_and_search_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("seven.g6");
    let f = file.to_str().unwrap();
    assert_eq!(code(&ceg(&["enumerate", "--order", "7", "--out", f])), 0);
    assert_eq!(std::fs::read_to_string(&file).unwrap().lines().count(), 853);
    let from_file = ceg(&["search", "--problem", "pairs", "--input", f, "--digits", "40"]);
    let builtin = ceg(&["search", "--problem", "pairs", "--order", "7", "--digits", "40"]);
    assert_eq!(code(&from_file), 0);
    let a: serde_json::Value = serde_json::from_slice(&from_file.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&builtin.stdout).unwrap();
    assert_eq!(a["pairs"], b["pairs"]);
}
