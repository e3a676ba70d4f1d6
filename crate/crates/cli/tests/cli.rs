use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::OnceLock;

use ladderlab::quadrature::{CumulativeTable, DEFAULT_MAX_STEP, DEFAULT_REL_TOL};

const T_MAX: f64 = 320_000.0;

/// Shared checkpoint table, made to exist before any process reads it.
fn checkpoints() -> &'static Path {
    static PATH: OnceLock<PathBuf> = OnceLock::new();
    PATH.get_or_init(|| {
        let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ladderlab-cache").join("chk.csv");
        CumulativeTable::load_or_build(&path, T_MAX, DEFAULT_MAX_STEP, DEFAULT_REL_TOL).expect("checkpoint table");
        path
    })
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ladderlab"))
        .current_dir(dir)
        .env_remove("LADDERLAB_THREADS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_shared(dir: &Path, args: &[&str]) -> Output {
    let mut all = vec!["--checkpoints", checkpoints().to_str().unwrap()];
    all.extend_from_slice(args);
    run(dir, &all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn data_rows(path: &Path) -> Vec<Vec<f64>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn checkpoints_are_monotone_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--t-max", "3000", "--t-hi", "3000", "--rel-tol", "1e-9", "checkpoints", "-o"];
    let first = run(dir.path(), &[&args[..], &["a/chk.csv"]].concat());
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let second = run(dir.path(), &[&args[..], &["b/chk.csv"]].concat());
    assert_eq!(second.status.code(), Some(0));

    let a = fs::read_to_string(dir.path().join("a/chk.csv")).unwrap();
    let b = fs::read_to_string(dir.path().join("b/chk.csv")).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with("t,I\n"));
    let rows = data_rows(&dir.path().join("a/chk.csv"));
    assert!(rows.windows(2).all(|w| w[1][0] > w[0][0] && w[1][1] >= w[0][1]));
    assert_eq!(rows.last().unwrap()[0], 3000.0);
    assert!(dir.path().join("a/chk.manifest.json").exists());
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["--t-max", "-5", "checkpoints"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("t_max"));

    assert_eq!(run(dir.path(), &["verify", "theorem-d"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["--format", "xml", "coeffs"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["coeffs", "--n", "0"]).status.code(), Some(2));

    fs::write(dir.path().join("bad.conf"), "speed = 3\n").unwrap();
    assert_eq!(run(dir.path(), &["--config", "bad.conf", "coeffs"]).status.code(), Some(2));

    let o = Command::new(env!("CARGO_BIN_EXE_ladderlab"))
        .current_dir(dir.path())
        .env("LADDERLAB_THREADS", "many")
        .arg("coeffs")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn io_errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["--config", "missing.conf", "coeffs"]).status.code(), Some(3));
    let o = run(dir.path(), &["plot-scripts"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("report.json"));
}

#[test]
fn zeros_export() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["zeros", "--to", "101", "-o", "zeros.csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("zeros.csv")).unwrap();
    assert!(text.starts_with("index,gamma,bracket_width,z_residual\n"));
    let rows = data_rows(&dir.path().join("zeros.csv"));
    assert_eq!(rows.len(), 29);
    assert!((rows[0][1] - 14.134725141734693).abs() < 1e-8);
}

#[test]
fn coefficient_listing() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["coeffs", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("A3 = 1/2*q^2\n"));
    assert!(text.contains("A5 = 1/2*q^3 + 1/12*q^4\n"));
    assert!(text.contains("B2 = q*a\n"));

    let o = run(dir.path(), &["--json", "coeffs", "--n", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["A"]["coeffs"][2], "1/2*q^2");
}

#[test]
fn ladders_and_their_gap() {
    let dir = tempfile::tempdir().unwrap();
    let grid = ["--t-lo", "500", "--t-hi", "8000", "--t-count", "9"];
    let o = run_shared(dir.path(), &[&grid[..], &["ladder", "-o", "k7.csv"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("k_log(K=7)"));
    let o = run_shared(dir.path(), &[&grid[..], &["--k", "9", "ladder", "-o", "k9.csv"]].concat());
    assert_eq!(o.status.code(), Some(0));

    let text = fs::read_to_string(dir.path().join("k7.csv")).unwrap();
    assert!(text.starts_with("T,phi,residual\n"));
    let rows = data_rows(&dir.path().join("k7.csv"));
    assert_eq!(rows.len(), 9);
    assert!(rows.windows(2).all(|w| w[1][1] > w[0][1]));
    assert!(rows.iter().all(|r| r[0] < r[1] && r[1] < 2.0 * r[0]));

    // same configuration, same bytes
    run_shared(dir.path(), &[&grid[..], &["ladder", "-o", "again.csv"]].concat());
    assert_eq!(text, fs::read_to_string(dir.path().join("again.csv")).unwrap());

    let o = run(dir.path(), &["ladder-gap", "k7.csv", "k9.csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("T,gap,abs_gap_times_T\n"));
    assert_eq!(stdout(&o).lines().count(), 10);

    fs::write(dir.path().join("short.csv"), "T,phi,residual\n500,999,0\n").unwrap();
    assert_eq!(run(dir.path(), &["ladder-gap", "k7.csv", "short.csv"]).status.code(), Some(2));
}

#[test]
fn grid_points_below_the_domain_are_dropped_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_shared(dir.path(), &["--t-lo", "20", "--t-hi", "2000", "--t-count", "6", "ladder", "-o", "l.csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("T0 = "));
    assert!(data_rows(&dir.path().join("l.csv")).len() < 6);
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("run.conf"), "k = 9\nt_lo = 1000\nt_hi = 2000\nt_count = 2\n").unwrap();
    let o = run_shared(dir.path(), &["--config", "run.conf", "ladder", "-o", "a.csv"]);
    assert!(stdout(&o).contains("k_log(K=9)"), "{}", stderr(&o));
    let o = run_shared(dir.path(), &["--config", "run.conf", "--k", "8", "ladder", "-o", "b.csv"]);
    assert!(stdout(&o).contains("k_log(K=8)"));
    assert_eq!(data_rows(&dir.path().join("b.csv")).len(), 2);
}

#[test]
fn series_suite_passes_and_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_shared(dir.path(), &["--out", "res", "verify", "series"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("res/report.json")).unwrap()).unwrap();
    assert_eq!(rep["pass"], true);
    assert_eq!(rep["sections"]["series"]["outputs"]["A"][4], "1/2*q^3 + 1/12*q^4");
    assert!(rep["sections"]["constants"]["pass"].as_bool().unwrap());
    assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn primes_suite_reports_the_sieve_and_exit_code_follows_the_checks() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_shared(dir.path(), &["verify", "primes"]);
    let rep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    let primes = &rep["sections"]["primes"];
    assert_eq!(primes["outputs"]["sieve_pi"][2], 1229.0);
    let pass = rep["pass"].as_bool().unwrap();
    assert_eq!(o.status.code(), Some(if pass { 0 } else { 1 }));
    assert_eq!(stdout(&o).contains("FAIL"), !pass);
}

#[test]
fn tangent_command() {
    let dir = tempfile::tempdir().unwrap();
    let u = 1e4f64.cbrt().to_string();
    let o = run_shared(dir.path(), &["--json", "tangent", "--T", "10000", "--U", &u]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["ratio"].as_f64().unwrap() - 1.0).abs() < 0.05);
    assert_eq!(run_shared(dir.path(), &["tangent", "--T", "10000", "--U", "40"]).status.code(), Some(2));
}

#[test]
fn plot_scripts_from_a_full_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_shared(dir.path(), &["--out", "res", "verify", "all"]);
    assert!(matches!(o.status.code(), Some(0 | 1)), "{}", stderr(&o));
    assert!(dir.path().join("res/report.json").exists());

    let o = run(dir.path(), &["--out", "res", "plot-scripts"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let plots = dir.path().join("res/plots");
    let snapshot = |names: &[&str]| names.iter().map(|n| fs::read(plots.join(n)).unwrap()).collect::<Vec<_>>();
    let names = ["envelope.csv", "envelope.gp", "remainder.csv", "remainder.gp", "beam.csv", "beam.gp", "primes.csv", "primes.gp"];
    let before = snapshot(&names);

    let env = fs::read_to_string(plots.join("envelope.csv")).unwrap();
    assert!(env.starts_with("T,lower,upper,phi\n"));
    for r in data_rows(&plots.join("envelope.csv")) {
        assert!((r[1] - 1.9 * r[0]).abs() < 1e-9 * r[0] && (r[2] - 2.0 * r[0]).abs() < 1e-9 * r[0]);
    }
    let rem = fs::read_to_string(plots.join("remainder.csv")).unwrap();
    assert!(rem.starts_with("T,abs_remainder,fit\n"));
    assert!(data_rows(&plots.join("remainder.csv")).iter().all(|r| r[1] <= r[2] * (1.0 + 1e-12)));
    let gp = fs::read_to_string(plots.join("envelope.gp")).unwrap();
    assert!(gp.contains("'envelope.csv'") && !gp.contains('/'));

    run(dir.path(), &["--out", "res", "plot-scripts"]);
    assert_eq!(before, snapshot(&names));
}
