use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use dualmetric::{BladeIndex, Dimension, Duality};
use dualmetric_cli::suite::Suite;
use nalgebra::DMatrix;

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualmetric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn config(name: &str) -> String {
    configs().join(name).to_string_lossy().into_owned()
}

fn eval(conf: &str, expr: &str) -> String {
    let out = run(&["eval", "--config", &config(conf), expr]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim().to_string()
}

#[test]
fn eval_examples() {
    assert_eq!(eval("diag23.conf", "e1 . e1"), "2");
    assert_eq!(eval("diag23.conf", "pair(J, I)"), "1");
    assert_eq!(eval("diag23.conf", "ginv(d1)"), "0.5*e1");
    assert_eq!(eval("euclid3.conf", "d1 _| (e1 ^ e2)"), "e2");
}

#[test]
fn eval_reports_kind_errors() {
    let out = run(&["eval", "--config", &config("diag23.conf"), "e1 . d1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("scalar product"));
    let out = run(&["eval", "--config", &config("diag23.conf"), "e1 +"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_is_reproducible_and_passes() {
    let args = ["check", "--config", &config("minkowski4.conf"), "--trials", "50", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.lines().all(|l| l.ends_with(" PASS")));
    assert!(text.lines().any(|l| l.starts_with("gamma6 50 ")));
}

#[test]
fn missing_config_exits_nonzero() {
    let out = run(&["check", "--config", "/nonexistent/metric.conf"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invert_agrees_with_lu() {
    for name in ["diag23.conf", "minkowski4.conf", "indefinite5.conf"] {
        let out = run(&["invert", "--config", &config(name)]);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        let diff: f64 = text
            .lines()
            .find_map(|l| l.strip_prefix("max_abs_diff "))
            .unwrap()
            .parse()
            .unwrap();
        assert!(diff < 1e-9, "{name}: {diff}");
    }
}

#[test]
fn corrupted_sign_table_fails_fund4() {
    let dim = Dimension::new(3).unwrap();
    let mut duality = Duality::new(dim);
    duality.corrupt_right_sign(
        BladeIndex::from_indices(&[1], dim).unwrap(),
        BladeIndex::from_indices(&[1, 2], dim).unwrap(),
    );
    let metrics = [DMatrix::identity(3, 3)];
    let broken = Suite::with_duality(&metrics, Arc::new(duality), 200, 3, 1e-9).unwrap();
    let report = broken.run_label("Fund4").unwrap();
    assert!(!report.passed, "{report}");

    let healthy = Suite::new(&metrics, 200, 3, 1e-9).unwrap();
    assert!(healthy.run_label("Fund4").unwrap().passed);
}
