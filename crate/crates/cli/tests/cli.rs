//! End-to-end checks of the binary: output values, exit codes, determinism,
//! environment overrides, CSV shape.

use std::process::{Command, Output};

fn realpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realpart"))
        .args(args)
        .env_remove("REALPART_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn k_n2_inf_is_closed_form_m2() {
    let out = realpart(&["k", "--n", "2", "--p", "inf"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let value = v["value"].as_f64().unwrap();
    assert!((value - 0.826_993_343_132_688_1).abs() < 1e-12);
    assert_eq!(v["method"], "closed_form(M2)");
}

#[test]
fn k_rejects_divergent_case_with_exit_2() {
    let out = realpart(&["k", "--n", "0", "--p", "inf"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("n = 0"), "stderr: {err}");
}

#[test]
fn k_rational_exponent_hits_theorem_family() {
    let out = realpart(&["k", "--n", "1", "--p", "3/2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["method"], "closed_form(T1-general)");
    assert!((v["value"].as_f64().unwrap() - 0.268_472_955_695_891_01).abs() < 1e-12);
}

#[test]
fn bounds_m3_values() {
    let out = realpart(&["bounds", "--m", "3", "--skip-sharp"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["lower"].as_f64().unwrap() - 143.239_448_782_705_8).abs() < 1e-6);
    assert!((v["upper"].as_f64().unwrap() - 171.887_338_539_247).abs() < 1e-6);
    assert!(v["k_sharp"].is_null());
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = realpart(&["table", "--n-max", "4", "--format", "csv"]);
    let b = realpart(&["table", "--n-max", "4", "--format", "csv"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let c = realpart(&["profile", "--n", "2", "--p", "inf", "--points", "16"]);
    let d = realpart(&["profile", "--n", "2", "--p", "inf", "--points", "16"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn profile_n6_is_non_increasing_and_n8_non_decreasing() {
    for (n, increasing) in [(6u32, false), (8, true)] {
        let out = realpart(&[
            "profile",
            "--n",
            &n.to_string(),
            "--p",
            "inf",
            "--points",
            "64",
            "--format",
            "csv",
        ]);
        assert!(out.status.success());
        let text = stdout(&out);
        let mut prev: Option<f64> = None;
        for line in text.lines().skip(1) {
            let v: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
            if let Some(p) = prev {
                if increasing {
                    assert!(v >= p - 1e-7 * v.abs(), "n={n}: {v} < {p}");
                } else {
                    assert!(v <= p + 1e-7 * v.abs(), "n={n}: {v} > {p}");
                }
            }
            prev = Some(v);
        }
    }
}

#[test]
fn profile_rejects_p1_with_exit_2() {
    let out = realpart(&["profile", "--n", "3", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn q_command_reports_regime_and_closed_form() {
    let out = realpart(&["q", "--m", "1", "--n", "3", "--gamma", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["regime"], "low");
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-10);

    let out = realpart(&["q", "--m", "3", "--n", "1", "--gamma", "2", "--maximize"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["regime"], "high");
    assert_eq!(v["beta_star"].as_f64().unwrap(), 0.0);
}

#[test]
fn verify_consistency_report_always_exits_zero() {
    let out = realpart(&["verify", "--suite", "consistency-report"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = realpart(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2)); // clap usage error
}

#[test]
fn table_csv_shape() {
    let out = realpart(&["table", "--n-max", "4", "--format", "csv"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k_p1,k_p2,k_inf,lower_over_k,upper_over_k");
    assert_eq!(lines.len(), 6); // header + n = 0..4
    // n = 0 has no K_{0,inf}
    assert!(lines[1].ends_with(",,,"));
    // K_{0,1} = 1/pi
    let k01: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((k01 - 1.0 / std::f64::consts::PI).abs() < 1e-12);
    // even rows carry the ratio columns
    let row4: Vec<&str> = lines[5].split(',').collect();
    let l_over_k: f64 = row4[4].parse().unwrap();
    assert!((l_over_k - 0.8830).abs() < 5e-4);
}

#[test]
fn env_tol_override_is_honored() {
    // a hopeless tolerance makes the quadrature path fail with exit 3
    let out = Command::new(env!("CARGO_BIN_EXE_realpart"))
        .args(["k", "--n", "2", "--p", "inf", "--quadrature"])
        .env("REALPART_TOL", "1e-300")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // the flag takes precedence over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_realpart"))
        .args(["k", "--n", "2", "--p", "inf", "--quadrature", "--tol", "1e-10"])
        .env("REALPART_TOL", "1e-300")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("realpart-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    let out = realpart(&["k", "--n", "3", "--p", "inf", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!((v["value"].as_f64().unwrap() - 6.0 / std::f64::consts::PI).abs() < 1e-12);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sharpness_small_run_reports_ok() {
    let out = realpart(&[
        "sharpness",
        "--n",
        "1",
        "--p",
        "inf",
        "--t-max",
        "1e3",
        "--samples",
        "65536",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ok"], true);
    assert!(v["ratio"].as_f64().unwrap() > 0.99);
    assert!(v["tail_bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn sharpness_density_export_import_round_trip() {
    let dir = std::env::temp_dir().join(format!("realpart-density-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("u.csv");
    let first = realpart(&[
        "sharpness", "--n", "1", "--p", "inf", "--t-max", "1e3", "--samples", "16384",
        "--density-out", csv.to_str().unwrap(),
    ]);
    assert!(first.status.success());
    let head = std::fs::read_to_string(&csv).unwrap();
    assert!(head.starts_with("t,u\n"), "csv header");
    let v1: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();

    // feeding the exported density back reproduces the attained value
    let second = realpart(&[
        "sharpness", "--n", "1", "--p", "inf", "--density", csv.to_str().unwrap(),
    ]);
    assert!(second.status.success());
    let v2: serde_json::Value = serde_json::from_str(&stdout(&second)).unwrap();
    let l1 = v1["lhs"].as_f64().unwrap();
    let l2 = v2["lhs"].as_f64().unwrap();
    // the import path drops the recorded jump locations, so the sign change
    // is read linearly across one sample cell (~dt-scale smearing)
    assert!((l1 - l2).abs() < 1e-2 * l1, "{l1} vs {l2}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn disk_command_with_verification() {
    let out = realpart(&[
        "disk", "--n", "1", "--p", "inf", "--z-re", "0", "--z-im", "0", "--u-cos", "1:1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["c_np"].as_f64().unwrap() - 4.0 / std::f64::consts::PI).abs() < 1e-10);
    assert_eq!(v["verify"]["ok"], true);
    assert!((v["verify"]["lhs"].as_f64().unwrap() - 1.0).abs() < 1e-8);
}
