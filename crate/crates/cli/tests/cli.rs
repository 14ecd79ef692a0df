use std::process::{Command, Output};

use serde_json::Value;

fn bergman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bergman"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_value(args: &[&str]) -> Value {
    let out = bergman(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn re(v: &Value) -> f64 {
    v["value"]["re"].as_f64().unwrap()
}

#[test]
fn eval_d2_quarter_point() {
    let pi3 = std::f64::consts::PI.powi(3);
    let closed = json_value(&[
        "eval", "--domain", "d2", "--nu", "0.25,0,0", "--format", "json",
    ]);
    assert!((re(&closed) - 2816.0 / (27.0 * pi3)).abs() < 1e-12);
    let series = json_value(&[
        "eval", "--domain", "d2", "--nu", "0.25,0,0", "--method", "series", "--format", "json",
    ]);
    assert!((re(&series) - 2816.0 / (27.0 * pi3)).abs() < 1e-8);
    assert!(series["tail_estimate"].as_f64().unwrap() >= 0.0);
    let printed = json_value(&[
        "eval", "--domain", "d2", "--nu", "0.25,0,0", "--form", "printed", "--format", "json",
    ]);
    assert!((re(&printed) - 1792.0 / (27.0 * pi3)).abs() < 1e-12);
}

#[test]
fn eval_d1_origin_and_pair() {
    let origin = json_value(&[
        "eval", "--domain", "d1", "--p", "1", "--lambda", "2", "--nu", "0,0,0,0", "--method",
        "series", "--format", "json",
    ]);
    assert!((re(&origin) - 24.0 / std::f64::consts::PI.powi(4)).abs() < 1e-14);
    let z = "0.3+0.1i,-0.2i,0.1,0.2-0.1i";
    let zeta = "0.25,0.1-0.1i,0.05j,-0.1";
    let closed = json_value(&[
        "eval", "--domain", "d1", "--p", "1", "--lambda", "2", "--z", z, "--zeta", zeta,
        "--format", "json",
    ]);
    let series = json_value(&[
        "eval", "--domain", "d1", "--p", "1", "--lambda", "2", "--z", z, "--zeta", zeta,
        "--method", "series", "--format", "json",
    ]);
    let d = (re(&closed) - re(&series))
        .hypot(closed["value"]["im"].as_f64().unwrap() - series["value"]["im"].as_f64().unwrap());
    assert!(d <= 1e-6 * re(&series).abs());
}

#[test]
fn norm_with_oracle() {
    let out = bergman(&["norm", "--domain", "d2", "--alpha", "-2,0,0", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("oracle"));
    let out = bergman(&[
        "norm", "--domain", "d1", "--p", "2", "--lambda", "1", "--alpha", "1,0,2,1", "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(bergman(&["eval", "--domain", "d2"]).status.code(), Some(2));
    assert_eq!(
        bergman(&["eval", "--domain", "d2", "--nu", "0.1,x,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bergman(&["eval", "--domain", "d1", "--nu", "0,0,0,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bergman(&["norm", "--domain", "d2", "--alpha", "-9,0,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bergman(&["frobnicate"]).status.code(), Some(2));
    let outside = bergman(&[
        "eval",
        "--domain",
        "d1",
        "--p",
        "1",
        "--lambda",
        "1",
        "--nu",
        "0.1,0,0.3,0",
    ]);
    assert_eq!(outside.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&outside.stderr).contains("error"));
    let printed = bergman(&[
        "verify", "kernels", "--domain", "d2", "--points", "5", "--form", "printed",
    ]);
    assert_eq!(printed.status.code(), Some(1));
    let ok = bergman(&["verify", "kernels", "--domain", "d2", "--points", "5"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn report_round_trip_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n);
    for name in ["a.json", "b.json"] {
        let out = bergman(&[
            "verify",
            "kernels",
            "--domain",
            "d1",
            "--p",
            "2",
            "--lambda",
            "1",
            "--points",
            "8",
            "--out",
            path(name).to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).contains("passed"));
    }
    let read = |n: &str| -> Value {
        serde_json::from_str(&std::fs::read_to_string(path(n)).unwrap()).unwrap()
    };
    let (mut a, mut b) = (read("a.json"), read("b.json"));

    let rows = a["rows"].as_array().unwrap();
    let passed = rows.iter().filter(|r| r["pass"].as_bool().unwrap()).count();
    let max_rel = rows
        .iter()
        .map(|r| r["rel_err"].as_f64().unwrap())
        .fold(0.0, f64::max);
    assert_eq!(a["summary"]["total"].as_u64().unwrap() as usize, rows.len());
    assert_eq!(a["summary"]["passed"].as_u64().unwrap() as usize, passed);
    assert_eq!(
        a["summary"]["failed"].as_u64().unwrap() as usize,
        rows.len() - passed
    );
    assert_eq!(a["summary"]["max_rel_err"].as_f64().unwrap(), max_rel);

    for v in [&mut a, &mut b] {
        v["summary"].as_object_mut().unwrap().remove("wall_time_ms");
    }
    assert_eq!(a, b);
}

#[test]
fn csv_report_layout() {
    let out = bergman(&[
        "verify",
        "norms",
        "--domain",
        "d2",
        "--max-index",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "kind,case_id,inputs,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tol,pass,error"
    );
    let first = lines.next().unwrap();
    assert!(first.starts_with("gating,d2/"));
    assert!(first.contains(",true,"));
}

#[test]
fn identities_suite_small() {
    let report = json_value(&["verify", "identities", "--trials", "10"]);
    assert_eq!(report["summary"]["failed"].as_u64(), Some(0));
    assert!(report["informational"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["case_id"]
            .as_str()
            .unwrap()
            .starts_with("closed_iv/printed")));
}
