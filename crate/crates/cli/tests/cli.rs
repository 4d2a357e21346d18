use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use spectravoid::curves::MatrixCurve;
use spectravoid::tracking::{detect_events, track};
use spectravoid::StructureClass;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectravoid")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn track_outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sym.csv");
    let o = run(&[
        "track",
        "--structure",
        "symmetric",
        "--n",
        "7",
        "--curve",
        "pencil",
        "--t-min",
        "-1",
        "--t-max",
        "1",
        "--grid",
        "401",
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let curve = MatrixCurve::<f64>::random_pencil(StructureClass::symmetric(7), -1.0, 1.0, 1).unwrap();
    let path = track(&curve, 401).unwrap();
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,branch,value"));
    let rows: Vec<(f64, usize, f64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), path.t_grid.len() * 7);
    for (i, &(t, j, v)) in rows.iter().enumerate() {
        assert_eq!(t, path.t_grid[i / 7]);
        assert_eq!(j, i % 7);
        assert_eq!(v, path.branches[i / 7][j]);
    }

    let events = read_json(&dir.path().join("sym.events.json"));
    let want = detect_events(&path, &curve).unwrap();
    let got = events["events"].as_array().unwrap();
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(&want) {
        assert_eq!(g["t_star"].as_f64().unwrap(), w.t_star);
        assert_eq!(g["min_gap"].as_f64().unwrap(), w.min_gap);
        assert_ne!(g["classification"], "crossing");
    }
}

#[test]
fn gaps_csv_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.csv");
    let o = run(&[
        "gaps",
        "--structure",
        "orthogonal",
        "--n",
        "5",
        "--samples",
        "300",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("sample,generic,plus-one,minus-one"));
    assert_eq!(lines.count(), 300);
}

#[test]
fn gaps_json_to_stdout() {
    let o = run(&[
        "gaps",
        "--structure",
        "symmetric",
        "--bandwidth",
        "1",
        "--n",
        "3",
        "--samples",
        "20",
        "--seed",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 20);
    assert_eq!(v["columns"][0], "generic");
}

#[test]
fn codim_report_and_pass() {
    let o = run(&[
        "codim",
        "--structure",
        "skew-symmetric",
        "--n",
        "6",
        "--collision",
        "zero",
        "--samples",
        "10000",
        "--seed",
        "4",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["expected"], 1);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["n"], 6);
    assert_eq!(v["samples"], 10000);
}

#[test]
fn inconclusive_exits_one() {
    let o = run(&[
        "codim",
        "--structure",
        "symmetric",
        "--n",
        "4",
        "--samples",
        "100",
        "--seed",
        "1",
        "--tail-fraction",
        "0.05",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn invalid_input_exits_two() {
    let o = run(&["codim", "--structure", "symmetric", "--n", "4", "--collision", "zero", "--seed", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot occur"));
    let o = run(&[
        "track",
        "--structure",
        "symmetric",
        "--n",
        "4",
        "--curve",
        "polar",
        "--seed",
        "1",
        "--out",
        "/tmp/never.csv",
    ]);
    assert_eq!(code(&o), 2);
    let o = run(&["gaps", "--structure", "rect-real", "--n", "4", "--seed", "1"]);
    assert_eq!(code(&o), 2);
    let o = run(&["gaps", "--structure", "symmetric", "--n", "4"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn unwritable_output_exits_three() {
    let o = run(&[
        "gaps",
        "--structure",
        "symmetric",
        "--n",
        "3",
        "--samples",
        "10",
        "--seed",
        "1",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(code(&o), 3);
}

#[test]
fn bad_thread_count_rejected() {
    let o = Command::new(env!("CARGO_BIN_EXE_spectravoid"))
        .args(["table"])
        .env("SPECTRAVOID_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn table_json_rows() {
    let o = run(&["table", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    let find = |s: &str| rows.iter().find(|r| r["structure"] == s).unwrap();
    assert_eq!(find("symmetric")["ambient_dimension"], 28);
    assert_eq!(find("unitary")["codimension"], 3);
    let skew = find("skew-symmetric, n even");
    assert_eq!(skew["ambient_dimension"], 15);
    assert_eq!(skew["codimension"], 1);
    assert!(skew["note"].is_string());
}

#[test]
fn orthogonal_minus_one_track_has_no_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o.csv");
    let o = run(&[
        "track",
        "--structure",
        "orthogonal",
        "--det",
        "-1",
        "--n",
        "6",
        "--curve",
        "polar",
        "--t-min",
        "-3",
        "--t-max",
        "3",
        "--seed",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let events = read_json(&dir.path().join("o.events.json"));
    assert!(events["events"].as_array().unwrap().iter().all(|e| e["classification"] != "crossing"));
}
