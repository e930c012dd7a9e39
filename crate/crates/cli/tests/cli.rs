use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("scaledss-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(dir: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scaledss"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn build_ts1_counts_and_round_trip() {
    let dir = workdir("build");
    let o = run(
        &dir,
        &["build", "--object", "ts", "--n", "1", "--out", "a.json"],
    );
    assert_eq!(o.status.code(), Some(0));
    let k: Value = serde_json::from_str(&fs::read_to_string(dir.join("a.json")).unwrap()).unwrap();
    assert_eq!(k["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(k["thin"].as_array().unwrap().len(), 8);
    assert_eq!(stdout_json(&o)["simplices_by_dim"][2], 18);

    let o = run(
        &dir,
        &[
            "build", "--object", "ts", "--n", "1", "--out", "b.json", "--seed", "7",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let (a, b) = (
        fs::read(dir.join("a.json")).unwrap(),
        fs::read(dir.join("b.json")).unwrap(),
    );
    assert_eq!(a, b);
    let loaded: scaledss::ScaledComplex = scaledss::io::read_json(dir.join("a.json")).unwrap();
    assert_eq!(
        scaledss::io::to_canonical_json(&loaded)
            .unwrap()
            .into_bytes(),
        a
    );
}

#[test]
fn certify_then_verify() {
    let dir = workdir("certify");
    let o = run(
        &dir,
        &[
            "certify", "--lemma", "inner", "--n", "2", "--i", "1", "--out", "c.json",
        ],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let o = run(&dir, &["verify", "--cert", "c.json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout_json(&o);
    assert_eq!(r["verify"]["ok"], true);
    assert_eq!(r["audit"]["ok"], true);
}

#[test]
fn truncated_certificate_fails_with_index() {
    let dir = workdir("truncated");
    run(
        &dir,
        &[
            "certify", "--lemma", "plus", "--n", "2", "--i", "1", "--out", "c.json",
        ],
    );
    let mut c: Value =
        serde_json::from_str(&fs::read_to_string(dir.join("c.json")).unwrap()).unwrap();
    let steps = c["steps"].as_array_mut().unwrap();
    let kept = steps.len() - 1;
    steps.truncate(kept);
    fs::write(dir.join("t.json"), serde_json::to_string(&c).unwrap()).unwrap();
    let o = run(&dir, &["verify", "--cert", "t.json"]);
    assert_eq!(o.status.code(), Some(1));
    let r = stdout_json(&o);
    assert_eq!(r["verify"]["first_failure"]["step"], kept);
    assert_eq!(r["audit"]["ok"], false);
}

#[test]
fn input_errors_exit_two() {
    let dir = workdir("input");
    assert_eq!(
        run(&dir, &["verify", "--cert", "missing.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(
            &dir,
            &["build", "--object", "face", "--n", "1", "--face", "Q"]
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(
            &dir,
            &["certify", "--lemma", "plus", "--n", "2", "--i", "0"]
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&dir, &["audit", "thin", "--n", "1", "--part", "middle"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn theta_verdicts() {
    let dir = workdir("theta");
    let o = run(
        &dir,
        &[
            "certify", "--lemma", "theta", "--i", "1", "--out", "t1.json",
        ],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let o = run(
        &dir,
        &[
            "certify", "--lemma", "theta", "--i", "0", "--out", "t0.json",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("000→010"));
}

#[test]
fn checks_and_audit() {
    let dir = workdir("checks");
    let o = run(&dir, &["audit", "thin", "--n", "1", "--part", "minus"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout_json(&o);
    assert_eq!(
        (r["total"].as_u64(), r["thin"].as_u64()),
        (Some(10), Some(2))
    );
    assert_eq!(
        run(&dir, &["cosimplicial-check", "--max-n", "2"])
            .status
            .code(),
        Some(0)
    );
    let o = run(&dir, &["rev-check", "--max-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o).as_array().unwrap().len(), 3);
}

#[test]
fn search_between_files() {
    let dir = workdir("search");
    run(
        &dir,
        &[
            "build",
            "--object",
            "horn",
            "--n",
            "2",
            "--i",
            "1",
            "--variant",
            "plus",
            "--out",
            "a.json",
        ],
    );
    run(
        &dir,
        &[
            "build",
            "--object",
            "horn",
            "--n",
            "2",
            "--i",
            "1",
            "--variant",
            "bar-plus",
            "--out",
            "b.json",
        ],
    );
    let o = run(
        &dir,
        &[
            "search", "--from", "a.json", "--to", "b.json", "--budget", "64", "--out", "c.json",
        ],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(stdout_json(&o)["found"], true);
}
