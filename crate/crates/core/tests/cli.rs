use std::path::Path;
use std::process::{Command, Output};

use cesaro::experiments::{ExperimentReport, CSV_HEADER};
use cesaro::series::CoeffSeq;

fn cesaro(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cesaro"))
        .current_dir(dir)
        .env_remove("SEED")
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn sweep_then_csv_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = cesaro(
        dir.path(),
        &["sweep-alpha", "--alphas", "0.75,1", "--ns", "10,100"],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.lines().any(|l| l.starts_with("PASS")));
    assert!(!stdout.contains("FAIL"));

    let out = cesaro(dir.path(), &["report", "--format", "csv", "--out", "r.csv"]);
    assert!(out.status.success());
    let csv = read(dir.path().join("r.csv"));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let fields: Vec<_> = row.split(',').collect();
        assert_eq!(fields.len(), 9, "{row}");
        // 17 significant digits: d.dddddddddddddddde±x
        let mantissa = fields[4].split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.len(), 18, "{row}");
        assert_eq!(fields[8], "");
    }
}

#[test]
fn reports_are_deterministic() {
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let out = cesaro(dir.path(), &["growth", "--ns", "10,100,1000"]);
        assert!(out.status.success());
        let out = cesaro(dir.path(), &["report", "--format", "csv", "--out", "g.csv"]);
        assert!(out.status.success());
        (
            read(dir.path().join("g.csv")),
            read(dir.path().join("cesaro-session.json")),
        )
    };
    assert_eq!(run(), run());
}

#[test]
fn seed_is_recorded_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cesaro"))
        .current_dir(dir.path())
        .env("SEED", "0x2A")
        .args(["growth", "--ns", "10"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report = ExperimentReport::read_json(dir.path().join("cesaro-session.json")).unwrap();
    assert_eq!(report.metadata.seed, 42);

    cesaro(dir.path(), &["growth", "--ns", "10"]);
    let report = ExperimentReport::read_json(dir.path().join("cesaro-session.json")).unwrap();
    assert_eq!(report.metadata.seed, 0x5EED);
}

#[test]
fn witness_writes_a_unit_maximizer() {
    let dir = tempfile::tempdir().unwrap();
    let out = cesaro(
        dir.path(),
        &["witness", "--n", "10", "--N", "40", "--out", "f.json"],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let f = CoeffSeq::read_json(dir.path().join("f.json")).unwrap();
    assert_eq!(f.get(0).norm(), 0.0);
    let energy = cesaro::dirichlet::energy_tail_sum(&f).energy;
    assert!((energy - 1.0).abs() < 1e-10);
}

#[test]
fn append_merges_sessions() {
    let dir = tempfile::tempdir().unwrap();
    assert!(cesaro(dir.path(), &["growth", "--ns", "10,100"])
        .status
        .success());
    let out = cesaro(
        dir.path(),
        &[
            "equivalence",
            "--series",
            "geometric",
            "--alpha",
            "0.5",
            "--ns",
            "100,1000",
            "--append",
        ],
    );
    assert!(out.status.success());
    let report = ExperimentReport::read_json(dir.path().join("cesaro-session.json")).unwrap();
    assert_eq!(report.rows.len(), 2 + 6);
}

#[test]
fn failing_checks_set_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    // The alternating series' mean gap oscillates, so the decrease check fails.
    let out = cesaro(
        dir.path(),
        &[
            "equivalence",
            "--series",
            "alt-harmonic",
            "--alpha",
            "0.5",
            "--ns",
            "10,11",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    // The report command reflects the stored checks.
    let out = cesaro(
        dir.path(),
        &["report", "--format", "json", "--out", "r.json"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(dir.path().join("r.json").exists());
}

#[test]
fn bad_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = cesaro(
        dir.path(),
        &["equivalence", "--series", "harmonic", "--ns", "10"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("harmonic"));

    let out = cesaro(
        dir.path(),
        &[
            "report",
            "--format",
            "csv",
            "--out",
            "x.csv",
            "--session",
            "missing.json",
        ],
    );
    assert_eq!(out.status.code(), Some(2));

    let out = cesaro(
        dir.path(),
        &["sweep-alpha", "--alphas", "0.5", "--ns", "10"],
    );
    assert_eq!(out.status.code(), Some(2));
    let out = cesaro(dir.path(), &["sweep-alpha", "--ns", "10", "--tol=-1"]);
    assert_eq!(out.status.code(), Some(2));
}
