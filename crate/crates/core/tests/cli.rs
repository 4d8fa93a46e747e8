#![allow(clippy::approx_constant)]

use std::process::{Command, Output};

use soliton_wigner::cli::{parse_config, Mode};
use soliton_wigner::*;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soliton-wigner")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (String, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let params = lines.next().unwrap().to_string();
    let _header = lines.next().unwrap();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (params, rows)
}

#[test]
fn qsl_prints_scalar_object() {
    let o = bin(&["qsl", "--fidelity", "0", "--delta-e", "1", "--hbar", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["tau_qsl"].as_f64().unwrap() - 0.7071068).abs() < 1e-7);
    assert_eq!(v["command"], "qsl");
}

#[test]
fn validate_reports_every_check() {
    let o = bin(&["validate"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 20);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("measured="));
}

#[test]
fn gaussian_csv_origin_row() {
    let o = bin(&["wigner", "--state", "gaussian", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("# params: {"));
    assert_eq!(text.lines().nth(1), Some("x,k,re_w,im_w,abs_w"));
    let (_, rows) = csv_rows(&text);
    assert_eq!(rows.len(), 81 * 81);
    let origin = rows.iter().find(|r| r[0] == 0.0 && r[1] == 0.0).unwrap();
    assert!((origin[2] - 0.3183099).abs() < 1e-7);
}

#[test]
fn params_line_is_parseable_json() {
    let o = bin(&["wigner", "--state", "kink", "--nx", "5", "--nk", "5"]);
    let text = stdout(&o);
    let line = text.lines().next().unwrap().strip_prefix("# params: ").unwrap();
    let v: serde_json::Value = serde_json::from_str(line).unwrap();
    assert_eq!(v["params"]["beta"], 1.0);
    assert_eq!(v["grid"]["y_cutoff"], 10.0);
    assert_eq!(v["source"]["window_truncated"], true);
}

#[test]
fn csv_values_round_trip_exactly() {
    let args = ["soliton-wigner", "wigner", "--state", "ho", "--n", "2", "--nx", "9", "--nk", "7"];
    let config = parse_config(args).unwrap();
    let field = wigner_transform(config.psi.as_ref().unwrap(), &config.grid).unwrap();
    let (_, rows) = csv_rows(&stdout(&bin(&args[1..])));
    for (idx, row) in rows.iter().enumerate() {
        let w = field.values[[idx / 7, idx % 7]];
        assert_eq!(row[2], w.re);
        assert_eq!(row[3], w.im);
    }
}

#[test]
fn json_values_round_trip_exactly() {
    let args = ["soliton-wigner", "wigner", "--state", "kink", "--nx", "7", "--nk", "5", "--format", "json"];
    let config = parse_config(args).unwrap();
    let field = kink_wigner_field(&config.params, &config.grid).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&bin(&args[1..]))).unwrap();
    for i in 0..7 {
        for j in 0..5 {
            assert_eq!(v["re_w"][i][j].as_f64().unwrap(), field.values[[i, j]].re);
            assert_eq!(v["im_w"][i][j].as_f64().unwrap(), field.values[[i, j]].im);
        }
    }

    let args = ["soliton-wigner", "charge", "--state", "sg", "--format", "json"];
    let config = parse_config(args).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&bin(&args[1..]))).unwrap();
    let xs = config.grid.xs();
    for (i, x) in xs.iter().enumerate() {
        let q = sg_charge_closed(*x, &config.params);
        assert_eq!(v["re"][i].as_f64().unwrap(), q.re);
        assert_eq!(v["value"][i].as_f64().unwrap(), q.norm());
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["wigner", "--state", "kink", "--nx", "0"][..],
        &["wigner", "--state", "kink", "--frobnicate"][..],
        &["wigner", "--state", "sg", "--mode", "numeric"][..],
        &["wigner", "--state", "ho", "--n", "11"][..],
        &["qsl", "--fidelity", "0.5", "--delta-e", "-1"][..],
        &["teleport"][..],
    ] {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn overflow_exits_two_naming_coordinate() {
    let o = bin(&[
        "wigner",
        "--state",
        "sg",
        "--mode",
        "numeric",
        "--y-cutoff",
        "200",
        "--ny",
        "401",
        "--nx",
        "3",
        "--nk",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("x =") && err.contains("y ="), "{err}");
}

#[test]
fn out_file_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("q.csv");
    std::fs::write(&cfg, r#"{"state": "gaussian", "boost": 0.7, "nx": 21}"#).unwrap();
    let o = bin(&["current", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let (_, rows) = csv_rows(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 21);
    for r in rows {
        let expected = 0.7 * (-r[0] * r[0]).exp() / std::f64::consts::PI.sqrt();
        assert!((r[1] - expected).abs() < 1e-6);
    }
}

#[test]
fn fidelity_command_between_eigenstates() {
    let o = bin(&["fidelity", "--state", "ho", "--n", "0", "--target-n", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["fidelity"].as_f64().unwrap().abs() < 1e-4);
    assert_eq!(v["details"]["clamped"], false);
    let o = bin(&["fidelity", "--state", "gaussian"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-4);
}

#[test]
fn kink_charge_tracks_density() {
    let o = bin(&["charge", "--state", "kink"]);
    assert!(o.status.success());
    let p = PhysicalParams::figure_defaults();
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 121);
    // finite k window leaves a ~4e-4 offset; the left plateau adds y-window drift
    for r in rows {
        let d = kink_wavefunction(r[0], &p).powi(2);
        assert!((r[1] - d).abs() < 1e-3 + 1e-4 * d, "{r:?}");
    }
}

#[test]
fn sg_charge_uses_light_soliton() {
    let config = parse_config(["soliton-wigner", "charge", "--state", "sg"]).unwrap();
    assert_eq!(config.params.m, 0.3);
    assert_eq!(config.mode, Mode::ClosedForm);
    let (params, rows) = csv_rows(&stdout(&bin(&["charge", "--state", "sg"])));
    assert!(params.contains("\"m\":0.3"));
    // minimum of |Q| sits at -π/2m
    let min = rows.iter().min_by(|a, b| a[1].total_cmp(&b[1])).unwrap();
    assert!((min[0] + std::f64::consts::PI / 0.6).abs() < 0.15);
}

#[test]
fn help_exits_zero() {
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}
