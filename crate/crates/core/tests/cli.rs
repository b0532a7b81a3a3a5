use std::path::Path;
use std::process::{Command, Output};

fn lw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lw"))
        .args(args)
        .output()
        .unwrap()
}

fn lw_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lw"))
        .args(args)
        .env(key, value)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn curve_csv_has_one_row_per_sample() {
    let o = lw(&[
        "curve",
        "--scene",
        "catenoid-gamma1",
        "--grid",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "t,x1,x2,x3,x4,dx1,dx2,dx3,dx4,accel_norm2,s");
    assert_eq!(lines.len(), 6);
    let mid: Vec<f64> = lines[3].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(&mid[..5], &[0.0, 0.0, 0.0, 0.0, 0.0]);
}

#[test]
fn output_is_identical_across_thread_counts() {
    let args = [
        "surface",
        "--scene",
        "builtin:catenoid-merged",
        "--format",
        "csv",
        "--grid",
        "12x7",
    ];
    let one = lw_env(&args, "LW_THREADS", "1");
    let four = lw_env(&args, "LW_THREADS", "4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(stdout(&one).lines().count(), 1 + 12 * 7);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = lw_env(&["scene", "catenoid-a"], "LW_THREADS", "zero");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn obj_mesh_has_grid_vertices_and_quads_as_triangles() {
    let o = lw(&[
        "surface",
        "--scene",
        "catenoid-merged",
        "--format",
        "obj",
        "--grid",
        "4x3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("v ")).count(), 12);
    assert_eq!(
        out.lines().filter(|l| l.starts_with("f ")).count(),
        2 * 3 * 2
    );
}

#[test]
fn malformed_scene_reports_json_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "bad.json",
        r#"{"space":"R42","representation":"canonical","curves":[
            {"g":"exp(t)","h":"exp(t)","interval":[0,1]},
            {"g":"-exp(t)","h":"exp(-t)","interval":["x",1]}]}"#,
    );
    let o = lw(&["surface", "--scene", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("/curves/1/interval/0"),
        "{}",
        stderr(&o)
    );

    let p = write(
        dir.path(),
        "expr.json",
        r#"{"space":"R31","representation":"canonical","curves":[
            {"g":"exp(t","interval":[0,1]},{"g":"t","interval":[2,3]}]}"#,
    );
    let o = lw(&["surface", "--scene", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/curves/0/g"), "{}", stderr(&o));
}

#[test]
fn crossing_curves_are_rejected_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "cross.json",
        r#"{"space":"R42","representation":"canonical","curves":[
            {"g":"t","h":"t","interval":[-1,1]},{"g":"t","h":"-t","interval":[-1,1]}]}"#,
    );
    let o = lw(&["surface", "--scene", &p]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("/curves"), "{err}");
    assert!(err.contains("t1") && err.contains("t2"), "{err}");
}

#[test]
fn split_then_merge_reproduces_the_surface() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = lw(&["split", "--scene", "catenoid-merged", "--out", d]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let g = format!("{d}/catenoid-merged-g.json");
    let h = format!("{d}/catenoid-merged-h.json");
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(format!("{d}/catenoid-merged-split-report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["passed"], true);

    let o = lw(&[
        "merge", "--scene", &g, "--scene", &h, "--name", "back", "--out", d,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let back = format!("{d}/back.json");
    let a = lw(&[
        "surface",
        "--scene",
        "catenoid-merged",
        "--format",
        "csv",
        "--grid",
        "6",
    ]);
    let b = lw(&[
        "surface", "--scene", &back, "--format", "csv", "--grid", "6",
    ]);
    let strip = |s: String| s.lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(stdout(&a)), strip(stdout(&b)));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        lw(&["verify", "--corpus", "paper-example"]).status.code(),
        Some(0)
    );
    assert_eq!(lw(&["verify", "--corpus", "empty"]).status.code(), Some(0));
    assert_eq!(
        lw(&[
            "verify",
            "--corpus",
            "paper-example",
            "--tolerance",
            "1e-14"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(lw(&["verify", "--corpus", "nope"]).status.code(), Some(2));
    assert_eq!(lw(&["verify"]).status.code(), Some(2));
}

#[test]
fn verify_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for (p, threads) in [(&a, "1"), (&b, "3")] {
        let o = lw_env(
            &[
                "verify",
                "--corpus",
                "standard",
                "--out",
                p.to_str().unwrap(),
                "--seed",
                "9",
            ],
            "LW_THREADS",
            threads,
        );
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let ra = std::fs::read(a.join("report.json")).unwrap();
    let rb = std::fs::read(b.join("report.json")).unwrap();
    assert_eq!(ra, rb);
    let v: serde_json::Value = serde_json::from_slice(&ra).unwrap();
    assert_eq!(v["seed"], 9);
    assert!(v["findings"].as_array().unwrap().len() == 1);
}

#[test]
fn verify_with_motion_on_a_scene() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "motion.json",
        r#"{"space":"R42","matrix":[[0,1,0,0],[1,0,0,0],[0,0,0,1],[0,0,1,0]]}"#,
    );
    let o = lw(&["verify", "--scene", "catenoid-merged", "--motion", &m]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"space":"R42","matrix":[[2,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#,
    );
    let o = lw(&["verify", "--scene", "catenoid-merged", "--motion", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/matrix"), "{}", stderr(&o));
}

#[test]
fn unknown_subcommand_and_help() {
    assert_eq!(lw(&["frobnicate"]).status.code(), Some(2));
    let o = lw(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}
