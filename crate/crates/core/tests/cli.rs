use std::fs;
use std::process::Command;

use automation_equilibrium::cli::{run, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK};
use automation_equilibrium::report::{parse_sweep_csv, CSV_HEADER};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("automation-eq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn equilibrium_prints_one_json_point() {
    let (code, out, err) = invoke(&["equilibrium", "--a-auto", "0"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let l = v["l_star"].as_f64().unwrap();
    assert!((l - 20.0).abs() < 1.5, "{l}");
    assert_eq!(v["pct_capital_auto"], 0.0);
    assert!(err.contains("L* ="));
}

#[test]
fn equilibrium_csv_format() {
    let (code, out, _) = invoke(&["equilibrium", "--a-auto", "1.3", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let parsed = parse_sweep_csv(&out).unwrap();
    assert_eq!(parsed.rows.len(), 1);
    assert_eq!(parsed.rows[0].l_star, 0.0);
    assert_eq!(parsed.rows[0].f_star, 65.0);
}

#[test]
fn calibrate_prints_a_old() {
    let (code, out, err) = invoke(&["calibrate", "--target-mpk", "1"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let a_old = v["a_old"].as_f64().unwrap();
    assert!((2.9..=3.1).contains(&a_old), "{a_old}");
    assert!((v["mpk"].as_f64().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn calibration_failure_exits_with_numerical_code() {
    let (code, _, err) = invoke(&["calibrate", "--target-mpk", "1e9"]);
    assert_eq!(code, EXIT_NUMERICAL);
    assert!(err.contains("calibration failed"), "{err}");
}

#[test]
fn bad_config_exits_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    fs::write(&path, "# comment\nalpha = 1.5\n").unwrap();
    let (code, _, err) = invoke(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("line 2") && err.contains("alpha"), "{err}");

    let (code, _, err) = invoke(&["sweep", "--config", "/nonexistent/x.cfg"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("cannot read"));

    let (code, _, _) = invoke(&["sweep", "--format", "xml"]);
    assert_eq!(code, EXIT_CONFIG);
    let (code, _, _) = invoke(&["frobnicate"]);
    assert_eq!(code, EXIT_CONFIG);
    let (code, _, _) = invoke(&["equilibrium"]);
    assert_eq!(code, EXIT_CONFIG);
    let (code, _, _) = invoke(&["sweep", "--a-min", "2", "--a-max", "1"]);
    assert_eq!(code, EXIT_CONFIG);
}

#[test]
fn help_is_not_an_error() {
    let (code, _, err) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("sweep"));
}

#[test]
fn config_file_overrides_are_applied() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    fs::write(&path, "a_old = 3.01\nk_bar = 50\n").unwrap();
    let (code, out, _) = invoke(&["equilibrium", "--a-auto", "0", "--config", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let l = v["l_star"].as_f64().unwrap();
    assert!((l - 20.21).abs() < 0.01, "{l}");
}

#[test]
fn sweep_with_charts_writes_data_and_svgs() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let (code, out, err) = invoke(&[
        "sweep",
        "--a-min",
        "0",
        "--a-max",
        "2",
        "--steps",
        "201",
        "--charts",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.is_empty());
    assert!(err.contains("production drop = 40.4%"), "{err}");

    let csv = fs::read_to_string(out_dir.join("sweep.csv")).unwrap();
    assert!(csv.starts_with(CSV_HEADER));
    let parsed = parse_sweep_csv(&csv).unwrap();
    assert_eq!(parsed.rows.len(), 201);
    assert_eq!(parsed.rows[0].pct_capital_auto, 0.0);
    let last = parsed.rows.last().unwrap();
    assert_eq!((last.a_auto, last.l_star, last.f_star), (2.0, 0.0, 100.0));
    let keys: Vec<&str> = parsed.comments.iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(
        keys,
        ["transition_onset", "displacement_complete", "drop_fraction", "recovery_a_auto"]
    );

    for name in [
        "sweep_production.svg",
        "sweep_capital.svg",
        "sweep_profit.svg",
        "sweep_labor.svg",
        "labor_supply.svg",
        "profit_curves.svg",
    ] {
        let svg = fs::read_to_string(out_dir.join(name)).unwrap();
        assert!(svg.starts_with("<svg") && svg.len() > 500, "{name}");
    }
}

#[test]
fn sweep_json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/out.json");
    let (code, _, _) = invoke(&[
        "sweep",
        "--steps",
        "21",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 21);
    assert!(v["stats"]["drop_fraction"].as_f64().unwrap() > 0.35);
}

#[test]
fn binary_runs_end_to_end() {
    let output = Command::new(env!("CARGO_BIN_EXE_automation-eq"))
        .args(["sweep", "--steps", "11"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert_eq!(parse_sweep_csv(&stdout).unwrap().rows.len(), 11);
    assert!(String::from_utf8(output.stderr).unwrap().contains("transition onset"));

    let status = Command::new(env!("CARGO_BIN_EXE_automation-eq"))
        .args(["calibrate", "--target-mpk", "1e9"])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(EXIT_NUMERICAL));
}
