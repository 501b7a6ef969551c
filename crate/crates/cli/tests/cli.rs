use std::fs;
use std::path::Path;
use std::process::Command;

use teamnk_cli::Summary;

fn teamnk(args: &[&str], threads: Option<&str>) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_teamnk"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env(teamnk_cli::THREADS_ENV, t);
    }
    cmd.output().expect("binary runs")
}

fn read(dir: &Path, rel: &str) -> String {
    fs::read_to_string(dir.join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

#[test]
fn single_trace_has_one_row_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = teamnk(&["--mode", "single", "--trace", "--seed", "3", "--out", out], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let trace = read(dir.path(), "traces/run_0.csv");
    assert_eq!(trace.lines().count(), 201);
    assert!(trace.starts_with("t,performance,"));
    let audit = read(dir.path(), "traces/auctions_0.csv");
    // one auction, fifteen bidders
    assert_eq!(audit.lines().count(), 16);
    assert_eq!(audit.lines().filter(|l| l.split(',').nth(4) == Some("1")).count(), 3);
    assert_eq!(read(dir.path(), "landscape.csv").lines().count(), 13);
}

#[test]
fn grid_smoke_and_determinism() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = |d: &Path| {
        vec![
            "--mode".to_string(),
            "grid".into(),
            "--runs".into(),
            "10".into(),
            "--seed".into(),
            "42".into(),
            "--out".into(),
            d.to_str().unwrap().into(),
        ]
    };
    let aa = args(a.path());
    let bb = args(b.path());
    let o = teamnk(&aa.iter().map(String::as_str).collect::<Vec<_>>(), Some("1"));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = teamnk(&bb.iter().map(String::as_str).collect::<Vec<_>>(), Some("3"));
    assert!(o.status.success());

    let summary = Summary::from_json(&read(a.path(), "summary.json")).unwrap();
    assert_eq!(summary.cells.len(), 54);
    for k in ["3", "5", "11"] {
        let csv = read(a.path(), &format!("{k}/md_grid.csv"));
        assert_eq!(csv, read(b.path(), &format!("{k}/md_grid.csv")));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "tau,label,0,0.1,0.2,0.3,0.4,0.5");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("1,initial,"));
        assert!(lines[2].starts_with("20,moderate,"));
        assert!(lines[3].starts_with("200,high,"));
        // the summary reproduces every cell
        assert_eq!(summary.md_grid_csv(k.parse().unwrap()).unwrap(), csv);
    }
    assert_eq!(read(a.path(), "summary.json"), read(b.path(), "summary.json"));
}

#[test]
fn scenario_writes_summary_and_series() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.txt");
    fs::write(&cfg, "K=5\np=0.2\ntau=20\nR=6\n").unwrap();
    let out = dir.path().join("out");
    let o = teamnk(
        &["--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--trace"],
        None,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = Summary::from_json(&read(&out, "summary.json")).unwrap();
    assert_eq!(summary.config.k, 5);
    assert_eq!(summary.cells[0].per_run_md.len(), 6);
    assert_eq!(read(&out, "series.csv").lines().count(), 201);
    assert!(out.join("traces/run_5.csv").exists());
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.txt");
    fs::write(&cfg, "alpha=0.7\nbeta=0.2\n").unwrap();
    let o = teamnk(&["--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha+beta must equal 1"));

    fs::write(&cfg, "tau=30\n").unwrap();
    let o = teamnk(&["--config", cfg.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("tau"));

    fs::write(&cfg, "speed=3\n").unwrap();
    let o = teamnk(&["--config", cfg.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("speed"));
}

#[test]
fn io_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = teamnk(&["--config", dir.path().join("missing.txt").to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));

    // output directory blocked by a regular file
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = teamnk(
        &["--mode", "single", "--out", blocker.join("sub").to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
}
