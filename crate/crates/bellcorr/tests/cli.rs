//! End-to-end tests of the `bellcorr` binary: flag handling, exit
//! codes, output formats and byte-determinism of the reproduced files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bellcorr"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Pulls the numeric value out of a `key   value` report line.
fn report_value(text: &str, key: &str) -> f64 {
    text.lines()
        .find(|l| l.split_whitespace().next() == Some(key))
        .unwrap_or_else(|| panic!("no `{key}` line in:\n{text}"))
        .split_whitespace()
        .nth(1)
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn measure_text_report() {
    let out = run(&["measure", "--state", "0.6,-0.6,1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!((report_value(&text, "discord") - 0.278071905113).abs() < 1e-10);
    assert!((report_value(&text, "classical_corr") - 1.0).abs() < 1e-10);
    assert!((report_value(&text, "mutual_info") - 1.278071905113).abs() < 1e-10);
    assert!(text.contains("optimal_axis     3"));
    assert!(text.contains("region           C3"));
}

#[test]
fn measure_json_report() {
    let out = run(&["measure", "--state", "0,0,0", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"mutual_info\":0"));
    assert!(text.contains("\"discord\":0"));
    assert!(text.contains("\"coherence_rel_3\":0"));
    assert!(text.contains("\"region\":\"BOUNDARY\""));
}

#[test]
fn measure_rejects_unphysical_state() {
    let out = run(&["measure", "--state", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("state outside tetrahedron"));
}

#[test]
fn measure_rejects_garbage_literal() {
    let out = run(&["measure", "--state", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["measure", "--state", "a,b,c"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn evolve_zero_state_emits_zero_rows() {
    let out = run(&[
        "evolve",
        "--state",
        "0,0,0",
        "--channel",
        "phaseflip",
        "--gamma",
        "0.1",
        "--t-max",
        "1.0",
        "--steps",
        "2",
        "--self-check",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("t,c1,c2,c3,mutual_info"));
    for line in &lines[1..] {
        assert!(line.contains(",0,0,0,0,0,0,"));
    }
}

#[test]
fn evolve_fig3_frozen_column() {
    let out = run(&[
        "evolve",
        "--state",
        "0.6,-0.6,1",
        "--channel",
        "bitflip",
        "--gamma",
        "0.1",
        "--t-max",
        "30",
        "--steps",
        "300",
        "--self-check",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 302);
    for line in text.lines().skip(1) {
        let c_rel3 = line.split(',').nth(9).unwrap();
        assert_eq!(c_rel3, "0.278071905113", "line: {line}");
    }
}

#[test]
fn evolve_rejects_bad_numbers() {
    let base = [
        "evolve",
        "--state",
        "0.6,-0.6,1",
        "--channel",
        "bitflip",
        "--gamma",
    ];
    let out = run(&[&base[..], &["-0.1", "--t-max", "30", "--steps", "300"]].concat());
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[&base[..], &["0.1", "--t-max", "-5", "--steps", "300"]].concat());
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[&base[..], &["0.1", "--t-max", "30", "--steps", "1"]].concat());
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "evolve",
        "--state",
        "0.6,-0.6,1",
        "--channel",
        "depolarizing",
        "--gamma",
        "0.1",
        "--t-max",
        "30",
        "--steps",
        "300",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown channel"));
}

#[test]
fn evolve_unwritable_output_is_io_error() {
    let out = run(&[
        "evolve",
        "--state",
        "0,0,0",
        "--channel",
        "phaseflip",
        "--gamma",
        "0.1",
        "--t-max",
        "1.0",
        "--steps",
        "2",
        "--output",
        "/nonexistent-dir/foo/out.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn transition_reports() {
    let out = run(&[
        "transition",
        "--state",
        "1,-0.6,0.6",
        "--channel",
        "phaseflip",
        "--gamma",
        "0.1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let analytic = report_value(&text, "analytic");
    assert!((analytic - 2.5541281188299534).abs() < 1e-10);
    let detected = report_value(&text, "detected");
    let step = 4.0 * analytic / 300.0;
    assert!((detected - analytic).abs() <= step, "{text}");

    let out = run(&[
        "transition",
        "--state",
        "0.3,-0.2,0.9",
        "--channel",
        "phaseflip",
        "--gamma",
        "0.1",
    ]);
    assert!(stdout(&out).contains("analytic  none"));

    let out = run(&[
        "transition",
        "--state",
        "0.5,-0.5,0",
        "--channel",
        "phaseflip",
        "--gamma",
        "0.1",
    ]);
    assert!(stdout(&out).contains("analytic  infinite"));
}

#[test]
fn oracle_discord_from_state() {
    let out = run(&[
        "oracle-discord",
        "--state",
        "0.6,-0.6,1",
        "--grid-theta",
        "32",
        "--grid-phi",
        "32",
        "--refine",
        "2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!((report_value(&text, "one_side") - 0.278071905113).abs() < 1e-3);
    assert!((report_value(&text, "two_side") - 0.278071905113).abs() < 1e-3);
    assert!((report_value(&text, "rel_entropy") - 0.278071905113).abs() < 1e-3);
    assert!(report_value(&text, "gap_one_side") < 1e-3);
}

#[test]
fn oracle_discord_from_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("bell.txt");
    std::fs::write(
        &path,
        "0.5+0j 0j 0j 0.5+0j\n0j 0j 0j 0j\n0j 0j 0j 0j\n0.5+0j 0j 0j 0.5+0j\n",
    )
    .unwrap();
    let out = run(&[
        "oracle-discord",
        "--matrix",
        path.to_str().unwrap(),
        "--refine",
        "2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        (report_value(&text, "one_side") - 1.0).abs() < 1e-4,
        "{text}"
    );

    // Invalid matrix: exit 2.
    std::fs::write(
        &path,
        "1.5+0j 0j 0j 0j\n0j -0.5+0j 0j 0j\n0j 0j 0j 0j\n0j 0j 0j 0j\n",
    )
    .unwrap();
    let out = run(&["oracle-discord", "--matrix", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("invalid matrix"));
}

#[test]
fn verify_theorems_runs() {
    let out = run(&["verify-theorems", "--state", "0.6,-0.6,1", "--refine", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(report_value(&text, "theorem1_gap") < 1e-12);
    assert!(report_value(&text, "theorem2_gap") < 1e-3);
    assert!(report_value(&text, "theorem2_c_a") < 1e-9);
}

#[test]
fn reproduce_matches_goldens_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    for target in ["fig3", "fig4"] {
        let out = run(&[
            "reproduce",
            target,
            "--output",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        let out = run(&[
            "reproduce",
            target,
            "--output",
            dir2.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let fig3a = std::fs::read(dir.path().join("fig3.csv")).unwrap();
    let fig3b = std::fs::read(dir2.path().join("fig3.csv")).unwrap();
    assert_eq!(fig3a, fig3b);
    assert_eq!(fig3a, include_bytes!("golden/fig3.csv"));
    let fig4a = std::fs::read(dir.path().join("fig4.csv")).unwrap();
    let fig4b = std::fs::read(dir2.path().join("fig4.csv")).unwrap();
    assert_eq!(fig4a, fig4b);
    assert_eq!(fig4a, include_bytes!("golden/fig4.csv"));
}

#[test]
fn reproduce_table_audits() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "reproduce",
        "table1",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let table1 = std::fs::read_to_string(dir.path().join("table1.csv")).unwrap();
    assert_eq!(table1.lines().count(), 1001);
    for line in table1.lines().skip(1) {
        let gap: f64 = line.split(',').nth(5).unwrap().parse().unwrap();
        assert!(gap < 1e-12, "identity violated: {line}");
    }

    // Same seed, same bytes; different seed, different bytes.
    let dir2 = tempfile::tempdir().unwrap();
    let _ = run(&[
        "reproduce",
        "table1",
        "--output",
        dir2.path().to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read(dir.path().join("table1.csv")).unwrap(),
        std::fs::read(dir2.path().join("table1.csv")).unwrap()
    );
    let _ = run(&[
        "reproduce",
        "table1",
        "--output",
        dir2.path().to_str().unwrap(),
        "--seed",
        "7",
    ]);
    assert_ne!(
        std::fs::read(dir.path().join("table1.csv")).unwrap(),
        std::fs::read(dir2.path().join("table1.csv")).unwrap()
    );

    let out = run(&[
        "reproduce",
        "table2",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let table2 = std::fs::read_to_string(dir.path().join("table2.csv")).unwrap();
    assert_eq!(table2.lines().count(), 302);
    for line in table2.lines().skip(1) {
        let active: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
        assert!(active <= 1e-10, "active branch residual too large: {line}");
    }
}

#[test]
fn unknown_arguments_exit_2() {
    let out = run(&["measure"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["evolve", "--state", "0,0,0", "--steps", "abc"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["reproduce", "fig9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}
