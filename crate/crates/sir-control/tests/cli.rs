//! End-to-end checks of the `sirctl` binary: exit codes, output files, and
//! the stable parts of the report format.

use std::path::Path;
use std::process::{Command, Output};

fn sirctl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sirctl"))
        .args(args)
        .output()
        .expect("failed to launch sirctl")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn solve_preset_writes_trajectory_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = sirctl(&[
        "solve",
        "--preset",
        "example1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("[report]"), "missing report block:\n{text}");
    assert!(text.contains("analytic.status = ok"), "missing solver lines:\n{text}");

    let csv = dir.path().join("example1_analytic.csv");
    assert!(csv.exists(), "expected {}", csv.display());
    let body = std::fs::read_to_string(&csv).unwrap();
    let mut lines = body.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,x,y,z,sigma,sigma_over_sigma0,x_inf_current"
    );
    let first = lines.next().unwrap();
    assert_eq!(first.split(',').count(), 7);
    // Every data line must parse as seven floats.
    for line in body.lines().skip(1) {
        for field in line.split(',') {
            field.parse::<f64>().unwrap();
        }
    }
}

#[test]
fn simulate_reports_uncontrolled_outcome() {
    let out = sirctl(&["simulate", "--preset", "example1"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("x_inf"), "missing x_inf line:\n{text}");
}

#[test]
fn unknown_preset_exits_with_validation_code() {
    let out = sirctl(&["solve", "--preset", "no_such_preset"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no_such_preset"));
}

#[test]
fn scenario_file_with_unknown_key_is_rejected_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(
        &path,
        "name = bad\ngamma = 0.1\nsigma0 = 3.0\nx0 = 0.99\ny0 = 0.01\nhorizon = 10\ncost = zero\nsolver = analytic\nbogus_key = 1\n",
    )
    .unwrap();
    let out = sirctl(&["solve", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("bogus_key"), "stderr: {err}");
    assert!(err.contains("9"), "expected the offending line number: {err}");
}

#[test]
fn missing_scenario_file_is_an_io_error() {
    let out = sirctl(&["solve", "--scenario", "/nonexistent/path.conf"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn conflicting_scenario_and_preset_is_rejected_by_clap() {
    let out = sirctl(&[
        "solve",
        "--preset",
        "example1",
        "--scenario",
        "/tmp/x.conf",
    ]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn preset_help_lists_builtins() {
    let out = sirctl(&["solve", "--preset", "help"]);
    // Listing presets goes through the validation-error path by design.
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    for name in ["example1", "covid_baseline", "min_hosp_1"] {
        assert!(err.contains(name), "missing preset {name} in: {err}");
    }
}

#[test]
fn sweep_param_renders_one_row_per_value() {
    let out = sirctl(&["sweep-param", "--preset", "diff_time_opt", "horizon", "25,50"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("horizon"), "missing header:\n{text}");
    assert!(text.contains("25"), "missing row for 25:\n{text}");
    assert!(text.contains("50"), "missing row for 50:\n{text}");
}

#[test]
fn solve_rejects_all_as_solver() {
    let out = sirctl(&["solve", "--preset", "example1", "--solver", "all"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn compare_runs_multiple_solvers_on_short_horizon() {
    // Small grid and coarse dt keep this a smoke test, not a benchmark.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quick.conf");
    std::fs::write(
        &path,
        "name = quick\ngamma = 0.1\nsigma0 = 3.0\nx0 = 0.9\ny0 = 0.1\nhorizon = 20\ncost = quadratic\nc2 = 0.1\nsolver = all\ngrid_nx = 80\ngrid_ny = 80\n",
    )
    .unwrap();
    let out = sirctl(&["compare", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("sweep.status = ok"), "missing sweep:\n{text}");
    assert!(text.contains("hjb.status = ok"), "missing hjb:\n{text}");
    assert!(text.contains("baseline.x_inf"), "missing baseline:\n{text}");
}

#[test]
fn csv_values_stay_inside_the_simplex(
) {
    let dir = tempfile::tempdir().unwrap();
    let out = sirctl(&[
        "solve",
        "--preset",
        "diff_time_opt",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let csv = dir.path().join("diff_time_opt_analytic.csv");
    check_simplex(&csv);
}

fn check_simplex(path: &Path) {
    let body = std::fs::read_to_string(path).unwrap();
    for line in body.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        let (x, y, z) = (v[1], v[2], v[3]);
        assert!(x >= -1e-9 && y >= -1e-9, "negative fraction in {line}");
        assert!((x + y + z - 1.0).abs() < 1e-9, "x+y+z != 1 in {line}");
        assert!(v[5] >= -1e-12 && v[5] <= 1.0 + 1e-12, "sigma ratio out of range");
    }
}
