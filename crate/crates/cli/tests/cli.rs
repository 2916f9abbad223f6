use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvekit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["schema"], "curvekit/1");
    v
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn intersect_reports_points_and_origin() {
    let v = json(&["intersect", "--c1", "cos(theta)", "--c2", "1-cos(theta)"]);
    assert_eq!(v["origin"], true);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    for p in points {
        assert!((f(&p["x"]) - 0.25).abs() < 1e-10);
        assert!((f(&p["y"]).abs() - 3f64.sqrt() / 4.0).abs() < 1e-10);
    }
    let v = json(&["intersect", "--c1", "1", "--c2", "cos(theta)"]);
    assert_eq!(v["origin"], false);
    assert_eq!(v["origin_witnesses"], Value::Null);
    assert_eq!(v["points"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes() {
    let same = run(&["intersect", "--c1", "cos(theta)", "--c2", "cos(theta)"]);
    assert_eq!(same.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&same.stderr).contains("identical curves"));
    assert_eq!(run(&["intersect", "--c1", "cos(", "--c2", "1"]).status.code(), Some(1));
    assert_eq!(
        run(&["intersect", "--c1", "foo(t)", "--c2", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["intersect", "--c1", "k*t", "--c2", "1"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(
        run(&["roulette", "--base", "limacon", "--lambda", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["area", "--limacon-lambda", "0.5"]).status.code(), Some(1));
}

#[test]
fn area_commands() {
    let v = json(&["area", "--c1", "sin(theta)", "--c2", "cos(theta)"]);
    assert!((f(&v["area"]) - (PI / 8.0 - 0.25)).abs() < 1e-9);
    let v = json(&["area", "--rose-N", "2"]);
    assert!((f(&v["area"]) - (PI / 4.0 - 0.5)).abs() < 1e-9);
    let v = json(&["area", "--limacon-lambda", "2", "--monte-carlo", "200000"]);
    let mc = &v["monte_carlo"];
    assert!((f(&v["area"]) - f(&mc["area"])).abs() < 3.0 * f(&mc["sigma"]));
    assert_eq!(v["contained"], false);
    let v = json(&["area", "--c1", "1", "--loop"]);
    assert!((f(&v["area"]) - PI).abs() < 1e-10);
    let v = json(&["area", "--c1", "cos(theta)"]);
    assert!((f(&v["area"]) - PI / 4.0).abs() < 1e-9);
    assert_eq!(run(&["area", "--c1", "cos(theta)", "--loop"]).status.code(), Some(2));
}

#[test]
fn period_and_symmetry() {
    assert_eq!(json(&["period", "--c1", "cos(theta/2)"])["period_multiple_of_pi"], 4);
    assert_eq!(json(&["period", "--c1", "theta"])["period_multiple_of_pi"], Value::Null);
    assert_eq!(
        json(&["symmetry", "--c1", "cos(3*theta/5)", "--axis", "y"])["symmetric"],
        false
    );
    assert_eq!(
        json(&["symmetry", "--c1", "cos(3*theta/5)", "--axis", "x"])["symmetric"],
        true
    );
    assert_eq!(
        json(&["symmetry", "--c1", "cos(3*theta)", "--rotate", "2*pi/3"])["symmetric"],
        true
    );
    assert_eq!(
        json(&["symmetry", "--c1", "sin(theta)", "--reflect", "pi/2"])["symmetric"],
        true
    );
}

#[test]
fn decompose_pieces() {
    let v = json(&["decompose", "--c1", "cos(theta/2)", "--domain", "0:6.2832"]);
    assert_eq!(v["pieces"].as_array().unwrap().len(), 2);
    let v = json(&["decompose", "--c1", "1"]);
    let pieces = v["pieces"].as_array().unwrap();
    assert_eq!(pieces.len(), 1);
    assert!((f(&pieces[0]["end"]) - f(&pieces[0]["start"]) - 2.0 * PI).abs() < 1e-10);
    let v = json(&["decompose", "--c1", "1 - lambda*sin(theta)", "--param", "lambda=2"]);
    assert_eq!(v["pieces"].as_array().unwrap().len(), 2);
    assert_eq!(v["params"]["lambda"], 2.0);
}

#[test]
fn cycloid_csv_matches_closed_form() {
    let out = run(&[
        "roulette",
        "--base",
        "line",
        "--radius",
        "1",
        "--from",
        "0",
        "--to",
        "12.566",
        "--samples",
        "500",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x,y"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 500);
    for row in rows {
        let t = row[0];
        assert!((row[1] - (t - t.sin())).abs() < 1e-9);
        assert!((row[2] - (1.0 - t.cos())).abs() < 1e-9);
    }
}

#[test]
fn svg_output_is_well_formed() {
    let out = run(&[
        "roulette", "--base", "circle", "--R", "4", "--radius", "1", "--side", "normal", "--format", "svg",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("<?xml version=\"1.0\""));
    assert_eq!(text.matches("<polyline").count(), 2);
    assert_eq!(text.matches("<svg").count(), 1);
    assert!(text.trim_end().ends_with("</svg>"));
    assert!(!text.contains("href"));
    // the astroid spans [-4, 4]; with 5% margin the box starts at -4.4
    let view = text.split("viewBox=\"").nth(1).unwrap().split('"').next().unwrap();
    let nums: Vec<f64> = view.split(' ').map(|s| s.parse().unwrap()).collect();
    assert!((nums[0] + 4.4).abs() < 1e-3 && (nums[2] - 8.8).abs() < 1e-3, "{view}");
}

#[test]
fn plot_and_output_file() {
    let out = run(&["plot", "--c", "cos(3*theta)", "--format", "csv", "--samples", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("theta,r,x,y\n"));
    assert_eq!(text.lines().count(), 6);
    let path = std::env::temp_dir().join(format!("curvekit-plot-{}.svg", std::process::id()));
    let out = run(&[
        "plot",
        "--c",
        "cos(3*theta)",
        "--c",
        "sin(2*theta)",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2);
    let _ = std::fs::remove_file(path);
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["area", "--c1", "cos(2*theta)", "--c2", "1/2", "--monte-carlo", "5000"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
