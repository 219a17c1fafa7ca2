use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn logjet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logjet")).args(args).output().expect("binary runs")
}

fn reports(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn write_tmp(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("logjet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn certify_scan_reports_minimal_degree() {
    let out = logjet(&["certify", "--from", "4", "--to", "30"]);
    assert_eq!(out.status.code(), Some(1));
    let rs = reports(&out);
    assert_eq!(rs.len(), 28);
    assert_eq!(rs[11]["params"]["d"], 15);
    assert_eq!(rs[11]["values"]["small_branch_value"], "-15");
    assert!(!rs[11]["notes"].as_array().unwrap().is_empty());
    let summary = rs.last().unwrap();
    assert_eq!(summary["command"], "certify-summary");
    assert_eq!(summary["values"]["minimal_uniform_degree"], 16);
}

#[test]
fn certify_chi_only() {
    let out = logjet(&["certify", "--d", "11", "--chi-only"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reports(&out)[0]["values"]["chi_leading"], "13/648");
    let out = logjet(&["certify", "--d", "10", "--chi-only"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(reports(&out)[0]["values"]["chi_leading"], "-5/162");
}

#[test]
fn chi_commands() {
    let out = logjet(&["chi", "--plane", "11", "--leading", "--twist", "-1"]);
    assert_eq!(reports(&out)[0]["values"]["leading"], "13/648");
    let out = logjet(&["chi", "--plane", "4", "--m", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reports(&out)[0]["values"]["chi"], "1");

    let spec = write_tmp(
        "surface.json",
        r#"{"basis":["a","b"],"form":[[1,0],[0,1]],"c1":[2,1],"c2":"3","c1log":[1,3],"c2log":"2"}"#,
    );
    let out = logjet(&["chi", "--surface", spec.to_str().unwrap(), "--leading"]);
    assert_eq!(reports(&out)[0]["values"]["leading"], "14/81");

    let bad = write_tmp("bad.json", r#"{"basis":["a"],"form":[[1]]}"#);
    let out = logjet(&["chi", "--surface", bad.to_str().unwrap(), "--leading"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("c1"));
}

#[test]
fn threshold_commands() {
    let out = logjet(&["threshold", "--lemma", "141", "--d", "11", "--m", "5"]);
    assert_eq!(reports(&out)[0]["values"]["bound"], "1/8");
    let out = logjet(&["threshold", "--lemma", "144", "--d", "15", "--m", "4"]);
    assert_eq!(reports(&out)[0]["values"]["bound"], "-1/12");
    let out = logjet(&["threshold", "--lemma", "141", "--d", "3", "--m", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn connection_and_singular_system() {
    let out = logjet(&["connection", "--d", "6", "--k0", "2", "--k1", "2", "--k2", "2", "--a", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &reports(&out)[0];
    assert_eq!(r["values"]["t1"], "4/3");
    assert_eq!(r["values"]["christoffels"]["Gamma^1_11"], "(5*z0^4 + 5/3*z1^2*z2^2) / (z0^4*z1 + 1/3*z1^3*z2^2)");
    let out = logjet(&["connection", "--d", "6", "--k0", "6", "--k1", "0", "--k2", "0", "--a", "-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(reports(&out)[0]["passes"]["solvable"], false);
}

#[test]
fn reduce_command() {
    let path = write_tmp("cusp.txt", "y\nx^2\n");
    let out = logjet(&["reduce", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = &reports(&out)[0];
    assert_eq!(r["values"]["depth"], 3);
    assert_eq!(r["values"]["tree"]["children"][0]["center"]["chart"], 1);

    let out = logjet(&["reduce", "--input", path.to_str().unwrap(), "--max-depth", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let text = logjet(&["reduce", "--input", path.to_str().unwrap(), "--format", "text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("chart2 s=0"));

    let bad = write_tmp("bad.txt", "y +\nx\n");
    assert_eq!(logjet(&["reduce", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    let missing = logjet(&["reduce", "--input", "/nonexistent/field.txt"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(logjet(&[]).status.code(), Some(2));
    assert_eq!(logjet(&["certify", "--d", "12", "--from", "4", "--to", "9"]).status.code(), Some(2));
    assert_eq!(logjet(&["chi", "--plane", "5"]).status.code(), Some(2));
}
