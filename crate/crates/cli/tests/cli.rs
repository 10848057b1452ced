use std::f64::consts::PI;
use std::process::Output;

use assert_cmd::Command;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::cargo_bin("lsradii")
        .unwrap()
        .env_clear()
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn jsonl(args: &[&str]) -> Vec<Value> {
    let mut full = args.to_vec();
    full.extend(["--format", "jsonl"]);
    let o = run(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn output_f64(rec: &Value, key: &str) -> f64 {
    rec["outputs"][key].as_f64().unwrap()
}

#[test]
fn eval_half_order_v_at_pi() {
    let recs = jsonl(&["eval", "--form", "v", "--nu", "0.5", "--z", "3.14159265"]);
    assert_eq!(recs.len(), 1);
    assert!((output_f64(&recs[0], "value") - 4.0 / PI).abs() < 1e-7);
    assert_eq!(recs[0]["command"], "eval");
    assert_eq!(recs[0]["tolerances"]["series_tol"], 1e-15);
}

#[test]
fn eval_struve_at_first_zero() {
    let recs = jsonl(&["eval", "--kernel", "struve", "--nu", "0.5", "--z", "6.28318531"]);
    assert!(output_f64(&recs[0], "value").abs() < 1e-12);
}

#[test]
fn eval_rejects_nonpositive_z() {
    let o = run(&["eval", "--form", "g", "--mu", "0.3", "--z", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("z must be > 0"));
    assert!(o.stdout.is_empty());
}

#[test]
fn struve_half_zeros_are_multiples_of_two_pi() {
    let recs = jsonl(&["zeros", "--target", "struve", "--nu", "0.5", "--count", "3"]);
    assert_eq!(recs.len(), 3);
    for (k, rec) in recs.iter().enumerate() {
        assert!((output_f64(rec, "zero") - 2.0 * PI * (k + 1) as f64).abs() < 1e-9);
        assert_eq!(rec["outputs"]["multiplicity"], 2);
    }
}

#[test]
fn lommel_derivative_zeros_interlace() {
    let recs = jsonl(&["zeros", "--target", "lommel-deriv", "--mu", "0.3", "--count", "2"]);
    assert_eq!(recs.len(), 2);
    assert!(recs.iter().all(|r| r["outputs"]["interlaces"] == true));
    assert!(output_f64(&recs[0], "zero") < output_f64(&recs[1], "zero"));
}

#[test]
fn zero_count_gives_empty_output() {
    let o = run(&["zeros", "--target", "lommel", "--mu", "0.3", "--count", "0"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
}

#[test]
fn radius_of_u() {
    let recs = jsonl(&["radius", "--form", "u", "--nu", "0.5", "--alpha", "0", "--beta", "1"]);
    assert!((output_f64(&recs[0], "radius") - 1.1382).abs() <= 5e-4);
}

#[test]
fn radius_with_beta_zero_is_convexity_radius() {
    let recs = jsonl(&["radius", "--form", "f", "--mu", "0.3", "--alpha", "0", "--beta", "0"]);
    let r = output_f64(&recs[0], "radius");
    let eval = jsonl(&[
        "eval",
        "--form",
        "f",
        "--mu",
        "0.3",
        "--z",
        &r.to_string(),
        "--curvature",
    ]);
    assert!(output_f64(&eval[0], "curvature").abs() < 1e-9);
    let uc = jsonl(&["radius", "--form", "f", "--mu", "0.3"]);
    assert!(output_f64(&uc[0], "radius") < r);
}

#[test]
fn radius_rejects_mu_zero() {
    let o = run(&["radius", "--form", "f", "--mu", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("mu != 0"), "{}", stderr(&o));
}

#[test]
fn unsafe_flag_warns_and_proceeds() {
    let strict = run(&["radius", "--form", "v", "--nu", "0.8"]);
    assert_eq!(strict.status.code(), Some(1));
    let o = run(&["radius", "--form", "v", "--nu", "0.8", "--unsafe"]);
    assert!(o.status.success());
    assert!(stderr(&o).starts_with("warning:"));
}

#[test]
fn parameter_of_the_wrong_family() {
    let o = run(&["radius", "--form", "u", "--mu", "0.3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--mu does not apply"));
}

#[test]
fn bad_arguments_are_validation_errors() {
    assert_eq!(run(&["radius", "--form", "q", "--mu", "0.3"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["radius", "--form", "f", "--mu", "0.3", "--root-tol", "1e-20"])
            .status
            .code(),
        Some(1)
    );
    assert!(run(&["--help"]).status.success());
}

#[test]
fn sweep_file_layout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let p = path.to_str().unwrap();
    let o = run(&[
        "sweep",
        "--form",
        "f",
        "--params",
        "-0.25,-0.2,0.1,0.3",
        "--r-min",
        "0.01",
        "--r-max",
        "0.9",
        "--steps",
        "90",
        "--out",
        p,
        "--format",
        "jsonl",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "form,param,r,lhs_printed,psi_unified");
    assert_eq!(lines.len(), 1 + 4 * 90);
    for line in &lines[1..] {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 5);
        assert_eq!(cols[0], "f");
        for c in &cols[1..] {
            // 17 significant digits
            let mantissa = c.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.replace('.', "").len(), 17, "{c}");
            c.parse::<f64>().unwrap();
        }
    }
    let summary: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(summary.len(), 4);
    let last = &summary[3];
    assert_eq!(last["outputs"]["sign_changes"], 1);
    assert!((output_f64(last, "crossing") - 0.6623).abs() < 5e-4);
}

#[test]
fn w_figure_crosses_at_pi_squared_over_four() {
    let recs = jsonl(&["sweep", "--figure", "f", "--steps", "500", "--out", "/dev/null"]);
    let half = recs.iter().find(|r| r["outputs"]["nu"] == 0.5).unwrap();
    assert_eq!(half["outputs"]["sign_changes"], 1);
    assert!((output_f64(half, "crossing") - PI * PI / 4.0).abs() < 1e-4);
}

#[test]
fn single_step_sweep() {
    let o = run(&["sweep", "--figure", "a", "--steps", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.contains(",1.0000000000000000e-2,")));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = run(&["verify", "--format", "jsonl"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let b = run(&["verify", "--format", "jsonl"]);
    assert_eq!(a.stdout, b.stdout);
    let recs: Vec<Value> = stdout(&a).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let golden = recs.iter().filter(|r| r["outputs"]["group"] == "golden").count();
    assert_eq!(golden, 7);
    assert!(recs.iter().all(|r| r["outputs"]["status"] != "FAIL"));
    let u = recs
        .iter()
        .find(|r| r["outputs"]["check"].as_str().unwrap().starts_with("5+(-5+8z^2)"))
        .unwrap();
    assert!((output_f64(u, "value") - 1.1382).abs() <= 5e-4);
    assert!((output_f64(u, "value") - output_f64(u, "expected")).abs() <= 1e-8);
}

#[test]
fn tolerance_flags_and_environment() {
    let o = Command::cargo_bin("lsradii")
        .unwrap()
        .env_clear()
        .env("LSRADII_ROOT_TOL", "1e-13")
        .args(["radius", "--form", "g", "--mu", "0.3", "--format", "jsonl"])
        .output()
        .unwrap();
    let rec: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rec["tolerances"]["root_tol"], 1e-13);
    let flag = Command::cargo_bin("lsradii")
        .unwrap()
        .env_clear()
        .env("LSRADII_ROOT_TOL", "1e-13")
        .args([
            "radius",
            "--form",
            "g",
            "--mu",
            "0.3",
            "--format",
            "jsonl",
            "--root-tol",
            "1e-10",
        ])
        .output()
        .unwrap();
    let rec: Value = serde_json::from_slice(&flag.stdout).unwrap();
    assert_eq!(rec["tolerances"]["root_tol"], 1e-10);
    assert_eq!(
        run(&["radius", "--form", "g", "--mu", "0.3", "--series-tol", "1e-3"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let args = ["sweep", "--figure", "c", "--steps", "40"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let table = run(&["zeros", "--target", "struve", "--nu", "-0.25", "--count", "4"]);
    assert_eq!(
        table.stdout,
        run(&["zeros", "--target", "struve", "--nu", "-0.25", "--count", "4"]).stdout
    );
}
