use std::f64::consts::PI;

use qseries::expansion::expand_general;
use qseries::specfun::euler_gamma;
use qseries::{q_to_x, SeriesSpec, C64};

use crate::output::ExpansionDoc;
use crate::{run, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("qseries").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn expand(args: &[&str]) -> ExpansionDoc {
    let r = cli(&[&["expand"], args].concat());
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn expand_geometric() {
    let doc = expand(&["--a", "1", "--b", "0", "--order", "2"]);
    let want = [(-1.0, 1.0), (0.0, -0.5), (1.0, 1.0 / 12.0), (2.0, 0.0)];
    assert_eq!(doc.terms.len(), want.len());
    for (t, (p, c)) in doc.terms.iter().zip(want) {
        assert_eq!(t.x_exponent.re, p);
        assert_eq!(t.x_exponent.im, 0.0);
        assert_eq!(t.log_coeffs.len(), 1);
        assert!(
            (t.log_coeffs[0].re - c).abs() < 1e-13,
            "x^{p}: {:?}",
            t.log_coeffs
        );
    }
    assert_eq!(doc.case, "general");
}

#[test]
fn expand_log_case_constant_block() {
    let doc = expand(&["--a", "2", "--b", "1", "--order", "1"]);
    let t = doc.terms.iter().find(|t| t.x_exponent.re == 0.0).unwrap();
    assert!((t.log_coeffs[0].re - euler_gamma() / 2.0).abs() < 1e-12);
    assert!((t.log_coeffs[1].re + 0.5).abs() < 1e-12);
}

#[test]
fn expand_sigma_leading_term() {
    let doc = expand(&["--a", "2", "--b", "1", "--alpha", "1", "--order", "1"]);
    let t = &doc.terms[0];
    assert_eq!(t.x_exponent.re, -0.5);
    assert!((t.log_coeffs[0].re - PI.powf(2.5) / 12.0).abs() < 1e-12);
    let closed = expand(&[
        "--a",
        "2",
        "--b",
        "1",
        "--alpha",
        "1",
        "--order",
        "1",
        "--closed-form",
    ]);
    assert_eq!(closed.case, "sigma/first m=0");
    assert_eq!(closed.terms.len(), doc.terms.len());
}

#[test]
fn json_round_trip() {
    let spec = SeriesSpec::zeta_zeta_shift(2.0, C64::new(1.0, 0.0), C64::new(-0.5, 0.0)).unwrap();
    let e = expand_general(&spec, 6).unwrap();
    let doc = expand(&["--a", "2", "--b", "1", "--alpha", "-0.5", "--order", "6"]);
    for x in [0.05, 0.1, 0.3, 1.0] {
        let want = e.evaluate(x);
        assert!((doc.evaluate(x) - want).norm() <= 1e-15 * want.norm(), "x = {x}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["expand", "--factors", "1:0,2:0.5", "--b", "0.25", "--order", "5"][..],
        &[
            "sweep",
            "--a",
            "2",
            "--x-grid",
            "0.05:0.5:4:log",
            "--order",
            "2,4",
        ],
        &["compare", "--alpha", "1", "--x", "0.2", "--format", "json"],
    ] {
        let first = cli(args);
        let second = cli(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert!(!first.stdout.is_empty());
    }
}

#[test]
fn compare_geometric() {
    let r = cli(&["compare", "--a", "1", "--b", "0", "--x", "0.1", "--order", "10"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stdout);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(
        lines[0],
        "x,q,oracle,oracle_err,expansion,abs_err,est_err,order,flags"
    );
    let row = &csv_rows(&r.stdout)[0];
    assert!(row[5].parse::<f64>().unwrap() <= 1e-12);
    assert_eq!(row[7], "10");
}

#[test]
fn compare_theta_is_flat() {
    let r = cli(&["compare", "--a", "2", "--b", "0", "--x", "0.3", "--order", "5"]);
    let row = &csv_rows(&r.stdout)[0];
    assert!(row[5].parse::<f64>().unwrap() <= 1e-12, "{}", r.stdout);
    assert!(row[8].split(';').any(|f| f == "beyond-all-orders"));
    assert_eq!(row[6].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn sweep_cardinality_and_order() {
    let r = cli(&["sweep", "--a", "2", "--x-grid", "0.1:0.3:3", "--order", "2,4"]);
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 6);
    let keys: Vec<(&str, &str)> = rows.iter().map(|r| (r[0].as_str(), r[7].as_str())).collect();
    assert_eq!(keys[0], ("0.1", "2"));
    assert_eq!(keys[1], ("0.1", "4"));
    assert_eq!(keys[2].1, "2");
}

#[test]
fn sweep_drops_duplicates_with_warning() {
    let r = cli(&["sweep", "--x-grid", "0.1:0.3:3", "--x", "0.1", "--order", "2"]);
    assert_eq!(csv_rows(&r.stdout).len(), 3);
    assert!(r.stderr.contains("duplicate point x = 0.1"), "{}", r.stderr);
    assert_ne!(r.code, EXIT_USAGE);
}

#[test]
fn q_grid_is_converted() {
    let r = cli(&["sweep", "--q-grid", "0.9:0.99:2", "--order", "2"]);
    let rows = csv_rows(&r.stdout);
    assert!(rows[0][0].starts_with("0.10536"));
    assert!(rows[1][0].starts_with("0.0100503"));
    assert_eq!(rows[0][1], "0.9");
}

#[test]
fn q_and_x_rows_agree() {
    let x = q_to_x(0.95).unwrap().to_string();
    let by_q = cli(&[
        "compare", "--alpha", "1", "--b", "1", "--q", "0.95", "--order", "3,5",
    ]);
    let by_x = cli(&["compare", "--alpha", "1", "--b", "1", "--x", &x, "--order", "3,5"]);
    let (rq, rx) = (csv_rows(&by_q.stdout), csv_rows(&by_x.stdout));
    assert_eq!(rq.len(), 2);
    for (a, b) in rq.iter().zip(&rx) {
        assert_eq!(a[1], "0.95");
        assert_eq!(b[1], "");
        assert_eq!(a[0], b[0]);
        assert_eq!(a[2..], b[2..]);
    }
}

#[test]
fn oracle_failure_marks_row() {
    let r = cli(&["compare", "--x", "1e-9", "--order", "2"]);
    assert_eq!(r.code, EXIT_NUMERICAL);
    let row = &csv_rows(&r.stdout)[0];
    assert_eq!(row[2], "");
    assert_eq!(row[8], "oracle-error");
    assert!(r.stderr.contains("oracle failed"));
}

#[test]
fn selftest_filter() {
    let r = cli(&["selftest", "--filter", "specfun"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stdout);
    let checks: Vec<&str> = r
        .stdout
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .collect();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|l| l.contains("specfun/")));
}

#[test]
fn selftest_reports_injected_fault() {
    let r = cli(&["selftest", "--filter", "specfun", "--inject-fault", "bernoulli"]);
    assert_eq!(r.code, EXIT_NUMERICAL);
    let line = r
        .stdout
        .lines()
        .find(|l| l.contains("specfun/bernoulli"))
        .unwrap();
    assert!(line.starts_with("FAIL"), "{line}");
    assert!(r.stdout.contains("1 failed"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["expand", "--alpha", "1", "--factors", "1:0"][..],
        &["expand", "--order", "x"],
        &["compare"],
        &["sweep", "--x", "0.1"],
        &["frobnicate"],
        &["selftest", "--filter", "no-such-check"],
        &["expand", "--order", "200"],
    ] {
        let r = cli(args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty());
    }
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("terms.json");
    let r = cli(&["expand", "--order", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.is_empty());
    let doc: ExpansionDoc = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.terms.len(), 5);
}

#[test]
fn eval_formats() {
    let r = cli(&[
        "eval", "--a", "2", "--x", "0.3", "--order", "3", "--format", "csv",
    ]);
    assert_eq!(r.code, EXIT_OK);
    let row = &csv_rows(&r.stdout)[0];
    let exact = 0.5 * (PI / 0.3).sqrt() - 0.5;
    assert!((row[2].parse::<f64>().unwrap() - exact).abs() < 1e-13);
    let text = cli(&["eval", "--a", "2", "--x", "0.3"]).stdout;
    assert!(text.contains("beyond-all-orders"));
    let json: serde_json::Value =
        serde_json::from_str(&cli(&["eval", "--x", "0.5", "--format", "json"]).stdout).unwrap();
    assert!(json[0]["expansion"]["re"].is_f64());
}
