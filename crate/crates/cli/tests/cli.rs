use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sitedual"));
    c.env_remove("LATTICE_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn write_grid(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn dual_json_on_lone_origin() {
    let f = fixture("lone_origin.grid");
    let o = run(&["--format", "json", "dual", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "report v1");
    assert_eq!(v["q"], 4);
    assert_eq!(v["boundary_edges"], 12);
    assert_eq!(v["timing_us"], Value::Null);
    assert!(v["checks"].as_object().unwrap().values().all(|c| c["passed"] == true));
}

#[test]
fn dual_timing_is_opt_in() {
    let f = fixture("lone_origin.grid");
    let o = run(&["--format", "json", "dual", "--timing", f.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["timing_us"].is_u64());
}

#[test]
fn dual_reads_stdin() {
    let text = std::fs::read_to_string(fixture("pinch.grid")).unwrap();
    let mut child = bin()
        .args(["--format", "json", "dual", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["h_out"].as_array().unwrap().contains(&serde_json::json!([0, 1])));
}

#[test]
fn gen_with_zero_density_is_the_origin() {
    let o = run(&["gen", "--p", "0", "--size", "9", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lattice-grid v1 9 9 4 4"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows.iter().map(|r| r.matches('#').count()).sum::<usize>(), 1);
}

#[test]
fn seed_from_environment_wins() {
    let args = ["gen", "--p", "0.5", "--size", "12", "--seed", "1"];
    let flag = stdout(&run(&args));
    let other = stdout(&run(&["gen", "--p", "0.5", "--size", "12", "--seed", "99"]));
    let env = bin().args(args).env("LATTICE_SEED", "99").output().unwrap();
    assert_eq!(stdout(&env), other);
    assert_ne!(flag, other);

    let bad = bin().args(args).env("LATTICE_SEED", "soon").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let f = fixture("pinch.grid");
    let f = f.to_str().unwrap();
    for args in [
        vec!["--format", "json", "dual", f],
        vec!["dual", f],
        vec!["--format", "json", "analyze", f],
        vec!["render", f],
        vec!["gen", "--p", "0.4", "--size", "16", "--seed", "3"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn generated_grid_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = stdout(&run(&["gen", "--p", "0.3", "--size", "12", "--seed", "5"]));
    let path = write_grid(&dir, "g.grid", &g);
    let o = run(&["verify", &path]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_json() {
    let f = fixture("pinch.grid");
    let o = run(&["--format", "json", "verify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["precondition"], Value::Null);
    assert_eq!(v["counterexample"], Value::Null);
    assert!(!v["verdicts"].as_array().unwrap().is_empty());
}

#[test]
fn tight_window_refuses_the_fence() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_grid(&dir, "tight.grid", "lattice-grid v1 3 3 1 1\n...\n.#.\n...\n");
    let o = run(&["dual", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!stdout(&o).is_empty());
    let o = run(&["verify", &path]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let ragged = write_grid(&dir, "bad.grid", "lattice-grid v1 3 2 1 0\n.#.\n..\n");
    let vacant = write_grid(&dir, "vacant.grid", "lattice-grid v1 1 1 0 0\n.\n");
    for args in [
        vec!["frobnicate"],
        vec!["gen", "--size", "4"],
        vec!["gen", "--p", "1.5", "--size", "4"],
        vec!["dual", "/nonexistent/grid"],
        vec!["dual", &ragged],
        vec!["analyze", &vacant],
        vec!["--format", "yaml", "dual", &ragged],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let o = run(&["dual", &ragged]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}

#[test]
fn enum_without_margin_is_all_too_tight() {
    let o = run(&["--format", "json", "enum", "--size", "2", "--margin", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["configs"], 8);
    assert_eq!(v["window_too_tight"], 8);
    assert_eq!(v["failure_count"], 0);
}

#[test]
fn enum_small_block_passes() {
    let o = run(&["enum", "--width", "3", "--height", "2", "--margin", "3", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn mc_with_empty_background() {
    let o = run(&["--format", "json", "mc", "--p", "0", "--size", "9", "--trials", "15"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["trials"], 15);
    assert_eq!(v["applicable"], 15);
    assert_eq!(v["passed"], 15);
}

#[test]
fn render_draws_the_fence() {
    let f = fixture("lone_origin.grid");
    let o = run(&["render", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert!(svg.contains("<svg ") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("#b22222"));
}

#[test]
fn in_process_matches_binary() {
    let f = fixture("lone_origin.grid");
    let args = ["sitedual", "--format", "json", "dual", f.to_str().unwrap()];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(sitedual::run_cli(args, &mut out, &mut err), sitedual::EXIT_OK);
    assert_eq!(out, run(&args[1..]).stdout);
}
