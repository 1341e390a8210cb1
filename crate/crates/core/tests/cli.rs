use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dante-flow"))
        .args(args)
        .env_remove("DANTE_FLOW_R2")
        .output()
        .expect("binary runs")
}

fn json_stdout(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn simulate_isotropic() {
    let out = run(&["simulate", "--a", "1", "--b", "1", "--c", "1", "--format", "json"]);
    let v = json_stdout(&out);
    let t = v["summary"]["collapse_time"].as_f64().unwrap();
    assert!((t - 1.0).abs() < 1e-6);
    assert_eq!(v["summary"]["terminated"], "collapsed");
}

#[test]
fn simulate_csv_header_and_summary_file() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("summary.json");
    let out = run(&[
        "simulate", "--a", "0.5", "--b", "1", "--c", "1.5", "--grid", "10", "--summary",
        summary.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "t,u,v,w,a,b,c,x,y,kappa1,kappa2,kappa3,ricci11,ricci22,ricci33,scalar"
    );
    let s: Value = serde_json::from_str(&std::fs::read_to_string(summary).unwrap()).unwrap();
    assert!(s["collapse_time"].as_f64().unwrap() > 0.0);
}

#[test]
fn snake_collapse_time() {
    let v = json_stdout(&run(&["snake", "--W", "1", "--alpha", "1", "--format", "json"]));
    let t = v["summary"]["collapse_time"].as_f64().unwrap();
    assert!((t - (0.25 + std::f64::consts::PI / 8.0)).abs() < 1e-12);
}

#[test]
fn turtle_check_reports_agreement() {
    let v = json_stdout(&run(&["turtle", "--U", "1", "--beta", "0.5", "--check", "--format", "json"]));
    assert!(v["summary"]["max_deviation"].as_f64().unwrap() < 1e-6);
    assert!((v["summary"]["collapse_time"].as_f64().unwrap() - 1.215_972_811_000_721_5).abs() < 1e-12);
}

#[test]
fn classify_degenerate_line() {
    let v = json_stdout(&run(&["classify", "--a", "1", "--b", "1", "--c", "2"]));
    assert_eq!(v["shape"], "snake");
    assert_eq!(
        [&v["ricci11_sign"], &v["ricci22_sign"], &v["ricci33_sign"]].map(|s| s.as_i64().unwrap()),
        [0, 0, 1]
    );
    assert_eq!(v["x"], 1.0);
    assert_eq!(v["y"], 0.0);
}

#[test]
fn curvature_values() {
    let v = json_stdout(&run(&["curvature", "--a", "1", "--b", "1", "--c", "2"]));
    assert_eq!([&v["kappa1"], &v["kappa2"], &v["kappa3"]].map(|k| k.as_f64().unwrap()), [1.0, 1.0, -1.0]);
}

#[test]
fn radius_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_dante-flow"))
        .args(["curvature", "--a", "1", "--b", "1", "--c", "2"])
        .env("DANTE_FLOW_R2", "1")
        .output()
        .unwrap();
    let v = json_stdout(&out);
    assert_eq!(v["r_squared"], 1.0);
    assert_eq!(v["kappa3"], -4.0);
}

#[test]
fn flowlines_from_file_with_apexes() {
    let dir = tempfile::tempdir().unwrap();
    let starts = dir.path().join("starts.csv");
    let apexes = dir.path().join("apexes.csv");
    std::fs::write(&starts, "x,y\n0.5,0.25\n1.0,0.5\n").unwrap();
    let out = run(&[
        "flowlines", "--starts", starts.to_str().unwrap(), "--apexes", apexes.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("line_id,x,y,t\n"));
    let table = std::fs::read_to_string(apexes).unwrap();
    let rows: Vec<&str> = table.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let r2: f64 = row.split(',').nth(5).unwrap().parse().unwrap();
        assert!((r2 - 2.0).abs() < 1e-4);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["flowlines", "--grid", "3", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn regions_csv() {
    let out = run(&["regions", "--resolution", "16"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("label,x,y\n"));
    for label in ["CE", "CF", "CD"] {
        assert!(text.lines().any(|l| l.starts_with(&format!("{label},"))));
    }
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["simulate", "--a", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "usage");

    let out = run(&["flowlines", "--starts", "/nonexistent/starts.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_3() {
    let out = run(&["curvature", "--a", "-1", "--b", "1", "--c", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"], "domain");
    assert!(out.stdout.is_empty());

    let out = run(&["simulate", "--a", "2", "--b", "1", "--c", "3"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["turtle", "--U", "1", "--beta", "1.5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
