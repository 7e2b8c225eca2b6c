use std::fs::{self, File};
use std::path::Path;
use std::process::{Command, Output};

use heisenberg_besov::config::RunConfig;
use heisenberg_besov::family::smooth_member;
use heisenberg_besov::io::write_radial_csv;

fn hbesov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbesov")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_smooth_input(dir: &Path) -> std::path::PathBuf {
    let mesh = RunConfig::default().mesh().unwrap();
    let f = smooth_member(&mesh, (0.5, 2.0, 3.0, 0));
    let p = dir.join("smooth.csv");
    write_radial_csv(&f, File::create(&p).unwrap()).unwrap();
    p
}

#[test]
fn kernel_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for d in [&a, &b] {
        let out = hbesov(&["kernel", "--band", "-1", "--out", path(d)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in ["kernel_phi.csv", "kernel_phi_profile.csv", "kernel_phi.manifest.json"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
    let text = fs::read_to_string(a.join("kernel_phi.csv")).unwrap();
    assert!(text.starts_with("r,t,re,im\n"));
    let profile = fs::read_to_string(a.join("kernel_phi_profile.csv")).unwrap();
    assert!(profile.starts_with("lambda,m,re,im\n"));
}

#[test]
fn besov_runs_are_byte_identical_and_modes_differ() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b, c) = (tmp.path().join("a"), tmp.path().join("b"), tmp.path().join("c"));
    for d in [&a, &b] {
        assert!(hbesov(&["besov", "--out", path(d)]).status.success());
    }
    for name in ["besov_report.csv", "besov_summary.json"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
    let summary: serde_json::Value = serde_json::from_slice(&fs::read(a.join("besov_summary.json")).unwrap()).unwrap();
    assert_eq!(summary["max_min_ratio"].as_object().unwrap().len(), 6);
    assert_eq!(summary["weight_mode"], "derived");
    let report = fs::read_to_string(a.join("besov_report.csv")).unwrap();
    assert!(report.starts_with("function_id,alpha,q,r,wavelet_norm,modulus_norm,kfunctional_norm,atom_norm\n"));
    assert_eq!(report.lines().count(), 1 + 6 * 9);

    assert!(hbesov(&["besov", "--out", path(&c), "--weight-mode", "paper-literal"]).status.success());
    let lit = fs::read_to_string(c.join("besov_report.csv")).unwrap();
    let wavelet = |s: &str| s.lines().nth(1).unwrap().split(',').nth(4).unwrap().to_string();
    assert_ne!(wavelet(&report), wavelet(&lit));
    let modulus = |s: &str| s.lines().nth(1).unwrap().split(',').nth(5).unwrap().to_string();
    assert_eq!(modulus(&report), modulus(&lit));
}

#[test]
fn exit_status_contract() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path();
    let quick = hbesov(&["selftest", "--quick", "--out", path(out)]);
    assert!(quick.status.success(), "{}", String::from_utf8_lossy(&quick.stdout));
    assert!(String::from_utf8_lossy(&quick.stdout).contains("plancherel"));
    let strict = hbesov(&["selftest", "--quick", "--tolerance-scale", "1e-9", "--out", path(out)]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&strict.stdout).contains("FAIL"));

    let cfg = out.join("tight.json");
    fs::write(&cfg, r#"{"ratio_bound": 1.5}"#).unwrap();
    assert_eq!(hbesov(&["besov", "--config", path(&cfg), "--out", path(out)]).status.code(), Some(1));

    let bad_band = hbesov(&["kernel", "--band", "9", "--out", path(out)]);
    assert_eq!(bad_band.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_band.stderr).contains("out of range"));
}

#[test]
fn transform_contracts() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let empty = dir.join("empty.csv");
    fs::write(&empty, "r,t,re,im\n").unwrap();
    assert!(hbesov(&["transform", "forward", "--input", path(&empty), "--out", path(dir)]).status.success());
    let spec = fs::read_to_string(dir.join("empty_spectral.csv")).unwrap();
    assert!(spec.lines().skip(1).all(|l| l.ends_with(",0.0000000000000000e0,0.0000000000000000e0")));

    let smooth = write_smooth_input(dir);
    let rt = hbesov(&["transform", "round-trip", "--input", path(&smooth), "--out", path(dir)]);
    assert!(rt.status.success(), "{}", String::from_utf8_lossy(&rt.stdout));

    assert!(hbesov(&["transform", "forward", "--input", path(&smooth), "--out", path(dir)]).status.success());
    let spectral = dir.join("smooth_spectral.csv");
    assert!(hbesov(&["transform", "inverse", "--input", path(&spectral), "--out", path(dir)]).status.success());

    let other = dir.join("other.json");
    fs::write(&other, r#"{"m_max": 16}"#).unwrap();
    let refused = hbesov(&["transform", "inverse", "--input", path(&spectral), "--config", path(&other), "--out", path(dir)]);
    assert!(!refused.status.success());
    assert!(String::from_utf8_lossy(&refused.stderr).contains("different grid"));

    let bad = dir.join("bad.csv");
    fs::write(&bad, "r,t,re,im\n1,2,x,0\n").unwrap();
    let err = hbesov(&["transform", "forward", "--input", path(&bad), "--out", path(dir)]);
    assert_eq!(err.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&err.stderr).contains("line 2"));
}

#[test]
fn besov_reads_input_files() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let smooth = write_smooth_input(dir);
    let zero = dir.join("zero.csv");
    fs::write(&zero, "r,t,re,im\n").unwrap();
    let out = hbesov(&["besov", "--input", path(&smooth), "--input", path(&zero), "--out", path(dir)]);
    assert!(out.status.success());
    let summary = fs::read_to_string(dir.join("besov_summary.json")).unwrap();
    assert!(summary.contains("zero: zero function skipped"));
}
