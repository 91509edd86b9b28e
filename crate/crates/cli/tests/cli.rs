use std::path::Path;
use std::process::{Command, Output};

use akv_cli::report::{Cell, Report};

fn akv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_akv"))
        .args(args)
        .env("AKV_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_report(path: &Path) -> (String, Report) {
    let text = std::fs::read_to_string(path).unwrap();
    let r = serde_json::from_str(&text).unwrap();
    (text, r)
}

#[test]
fn passing_run_exits_zero_with_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = akv(&[
        "verify", "--instance", "hyperbolic3sym", "--checks", "gray", "--points", "4", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (text, r) = read_report(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["summary"]["pass"], true);
    assert!(v["summary"]["g3_iv"]["max"].as_f64().unwrap() <= 1e-8);
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
    assert_eq!(v["points"][0]["p"].as_array().unwrap().len(), 4);
    assert_eq!(v["meta"]["seed"], 0);
    assert_eq!(v["meta"]["conventions_sha256"].as_str().unwrap().len(), 64);
    // summary max is recomputable from the point records
    for (name, s) in &r.summary.checks {
        let m = r
            .points
            .iter()
            .filter_map(|p| p.residuals[name].value())
            .reduce(f64::max);
        assert_eq!(m, s.max, "{name}");
    }
}

#[test]
fn json_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = akv(&["verify", "--instance", "poly2", "--checks", "u2,chern", "--points", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let (text, r) = read_report(&out);
    assert_eq!(r.to_json(), text);
    for p in &r.points {
        for c in p.residuals.values() {
            if let Cell::Value(v) = c {
                let back: f64 = serde_json::from_str(&serde_json::to_string(v).unwrap()).unwrap();
                assert_eq!(back.to_bits(), v.to_bits());
            }
        }
    }
}

#[test]
fn negative_control_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = akv(&["verify", "--instance", "perturbed", "--checks", "gray", "--points", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let (_, r) = read_report(&out);
    assert!(!r.summary.pass);
    let g3 = &r.summary.checks["g3_iv"];
    assert_eq!(g3.pass, Some(false));
    assert!(g3.max.unwrap() > 1e-4);
}

#[test]
fn config_errors_exit_two() {
    for args in [
        &["verify", "--instance", "poly2", "--checks", "gray,bogus"][..],
        &["verify", "--instance", "no_such_preset"],
        &["verify", "--instance", "poly2", "--points", "0"],
        &["verify", "--instance", "poly2", "--format", "xml"],
        &["verify"],
    ] {
        assert_eq!(code(&akv(args)), 2, "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("r.json");
    let o = akv(&["verify", "--instance", "poly2", "--checks", "", "--points", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
}

#[test]
fn empty_check_list_runs_preflight_only() {
    let o = akv(&["verify", "--instance", "gibbons_hawking", "--checks", "", "--points", "2"]);
    assert_eq!(code(&o), 0);
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&String> = r.summary.checks.keys().collect();
    assert_eq!(
        names,
        ["cauchy_riemann", "d_omega", "j_orthogonal", "j_squared", "metric_spd", "omega_norm"]
    );
}

#[test]
fn csv_columns_are_fixed_then_sorted() {
    let o = akv(&["verify", "--instance", "kahler_product", "--checks", "section4", "--points", "2", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rows.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(&header[..5], ["point", "x", "y", "z", "t"]);
    assert_eq!(header.last().unwrap(), "error");
    let residuals = &header[13..header.len() - 1];
    let mut sorted = residuals.to_vec();
    sorted.sort();
    assert_eq!(residuals, &sorted[..]);
    assert!(residuals.iter().any(|h| h == "nabla_I"));
    let records: Vec<_> = rows.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 2);
    let m1 = residuals.iter().position(|h| h == "m1").unwrap() + 13;
    assert_eq!(&records[0][m1], "skipped");
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let args = ["verify", "--instance", "poly2", "--checks", "gray,bianchi", "--points", "4", "--seed", "7"];
    let a = akv(&args);
    let b = akv(&args);
    let serial = Command::new(env!("CARGO_BIN_EXE_akv")).args(args).env("AKV_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, serial.stdout);
}

#[test]
fn raw_instance_file_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = akv(&["random-spec", "--seed", "3"]);
    assert_eq!(code(&spec), 0);
    let inst = dir.path().join("inst.json");
    std::fs::write(&inst, &spec.stdout).unwrap();
    let o = akv(&["verify", "--instance", inst.to_str().unwrap(), "--checks", "u2", "--points", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    // gray checks are not claimed by a raw spec, so g3 residuals would carry no verdict
    assert!(r.meta.hypotheses.is_empty());

    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"instance": "hyperbolic3sym", "checks": ["gray"], "points": 2, "seed": 5}"#).unwrap();
    let o = akv(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((r.meta.seed, r.points.len()), (5, 2));

    std::fs::write(&cfg, r#"{"instance": "poly2", "bogus": 1}"#).unwrap();
    assert_eq!(code(&akv(&["verify", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn list_checks_catalogue() {
    let o = akv(&["list-checks"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().count() >= 20);
    assert!(text.lines().any(|l| l.starts_with("weitzenbock1 → ")));
    assert!(text.lines().any(|l| l.starts_with("gammaI-gammaJ → ")));
}
