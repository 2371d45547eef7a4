mod common;

use std::fs;
use std::path::Path;

use common::*;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stderr(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn bounds_succeeds_with_all_flags() {
    let out = fpb(&["bounds", problem("fermat_cubic.fpb").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(!out.stdout.is_empty());
}

#[test]
fn dropping_a_flag_refuses_without_output() {
    let text = fs::read_to_string(problem("fermat_cubic.fpb")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    for flag in ["normal_domain", "cohen_macaulay", "omega_invertible", "strongly_semistable"] {
        let stripped: String = text
            .lines()
            .map(|l| if l.starts_with("flags") { l.replace(flag, "") } else { l.to_string() })
            .collect::<Vec<_>>()
            .join("\n");
        let file = write(dir.path(), "stripped.fpb", &stripped);
        let out = fpb(&["bounds", &file]);
        assert_eq!(out.status.code(), Some(1), "dropping {flag}: {}", stderr(&out));
        assert!(out.stdout.is_empty(), "dropping {flag} still printed a payload");
        assert!(stderr(&out).contains(flag), "refusal should name {flag}: {}", stderr(&out));
    }
}

#[test]
fn parameter_case_needs_no_semistability() {
    let out = fpb(&["bounds", problem("cubic_xy.fpb").to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["nu"], "2");
}

#[test]
fn compare_mode_is_byte_identical() {
    let file = problem("fermat_cubic.fpb");
    let args = ["kq", file.to_str().unwrap(), "--emax", "1", "--format", "json", "--compare"];
    let a = fpb(&args);
    let b = fpb(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed"));
}

#[test]
fn out_file_defaults_to_json() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = fpb(&["koszul", problem("fermat_quartic.fpb").to_str().unwrap(), "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["kind"], "koszul");
    assert!(v["timings"].is_object());
}

#[test]
fn csv_only_for_kq() {
    let out = fpb(&["kq", problem("plane_p2.fpb").to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("e,q,k_empirical,k_theoretical,tight,exceeds_threshold,cap"));
    let ks: Vec<&str> = lines.map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(ks, ["3", "7", "15"]);

    let out = fpb(&["bounds", problem("plane_p2.fpb").to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let composite = write(dir.path(), "c.fpb", "[ring]\nchar = 4\nvars = x y\n[ideal]\ngens = x ; y\n");
    let out = fpb(&["bounds", &composite]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("characteristic must be prime"), "{}", stderr(&out));

    let inhomogeneous = write(dir.path(), "h.fpb", "[ring]\nchar = 5\nvars = x y\n[ideal]\ngens = x^2 + y ; y\n");
    let out = fpb(&["kq", &inhomogeneous]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("generator not homogeneous"), "{}", stderr(&out));

    let out = fpb(&["kq", dir.path().join("missing.fpb").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = fpb(&["member", problem("fermat_cubic.fpb").to_str().unwrap(), "--q", "6", "--elem", "x^6"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));

    let out = fpb(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_matrix_is_refused_unless_allowed() {
    let dir = tempfile::tempdir().unwrap();
    // linear generators mixing all variables leave no fine grading to split by
    let file =
        write(dir.path(), "dense.fpb", "[ring]\nchar = 2\nvars = x y z\n[ideal]\ngens = x + y + z ; x + y ; y + z\n");
    let out = fpb(&["member", &file, "--q", "64", "--elem", "x^190"]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(stderr(&out).contains("--allow-large"));
    assert!(out.stdout.is_empty());

    let out = fpb(&["member", &file, "--q", "2", "--elem", "x^2", "--allow-large"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn member_reports_non_membership() {
    let v = fpb_json(&["member", problem("fermat_cubic.fpb").to_str().unwrap(), "--q", "7", "--elem", "x^6*y^5*z^4"]);
    assert_eq!(v["payload"]["member"], false);
    let v = fpb_json(&["member", problem("fermat_cubic.fpb").to_str().unwrap(), "--q", "7", "--elem", "x^14*y"]);
    assert_eq!(v["payload"]["member"], true);
}

#[test]
fn kq_without_semistability_reports_no_threshold() {
    let text = fs::read_to_string(problem("fermat_cubic.fpb")).unwrap().replace("strongly_semistable", "");
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "weak.fpb", &text);
    let v = fpb_json(&["kq", &file, "--emax", "1"]);
    assert!(v["payload"]["nu"].is_null());
    assert!(v["payload"]["threshold_note"].is_string());
    assert_eq!(v["payload"]["rows"][0]["k_empirical"], 22);
}
