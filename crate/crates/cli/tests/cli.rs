use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shefferzeta")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).expect("valid JSON line")).collect()
}

#[test]
fn gen_pretty_values() {
    let out = run(&["gen", "p", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "3x^2 - x");
    assert_eq!(stdout(&run(&["gen", "p", "0"])).trim(), "1");
}

#[test]
fn gen_q3_json_is_low_to_high() {
    let out = run(&["gen", "q", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["coeffs"], serde_json::json!(["-61", "-61", "-30", "-15"]));
    assert_eq!(v["seq"], "q");
}

#[test]
fn gen_all_routes_agree() {
    let out = run(&["gen", "p", "12", "--all-routes", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["agree"], true);
    assert_eq!(v["routes"].as_array().unwrap().len(), 3);
}

#[test]
fn gen_csv_has_one_row_per_coefficient() {
    let out = run(&["gen", "p", "3", "--format", "csv"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "seq,n,route,power,coeff");
    // p_3 = -x + 15x^2 - 15x^3 has four stored coefficients
    assert_eq!(lines.len(), 5);
}

#[test]
fn numbers_tables() {
    let out = run(&["numbers", "bernoulli", "8"]);
    assert_eq!(stdout(&out), "0: 1\n1: -1/2\n2: 1/6\n4: -1/30\n6: 1/42\n8: -1/30\n");
    let out = run(&["numbers", "euler", "8", "--format", "json"]);
    let v = &json_lines(&out)[0];
    let values: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1", "-1", "5", "-61", "1385"]);
    let out = run(&["numbers", "zeta-even-ratio", "4"]);
    assert_eq!(stdout(&out), "2: 1/6\n4: 1/90\n");
}

#[test]
fn numbers_cross_check_and_variant() {
    let out = run(&["numbers", "bernoulli", "12", "--cross-check", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert!(json_lines(&out)[0]["rows"].as_array().unwrap().iter().all(|r| r["agree"] == true));
    let out = run(&["numbers", "euler", "6", "--variant", "q_at_0"]);
    assert_eq!(stdout(&out), "0: 1\n2: -1\n4: 5\n6: -61\n");
    assert_eq!(code(&run(&["numbers", "euler", "6", "--variant", "nope"])), 2);
}

#[test]
fn csv_uses_exact_fractions() {
    let out = run(&["numbers", "zeta-even-ratio", "6", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.contains("6,1/945,"));
    assert!(!text.contains('.'));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["verify", "exact", "--ids", "nosuch"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown check"));
    assert_eq!(code(&run(&["gen", "x", "2"])), 2);
    assert_eq!(code(&run(&["gen", "q", "2", "--route", "diff_recurrence"])), 2);
    assert_eq!(code(&run(&["verify", "numeric", "--ids", "eq3_7", "--prec", "10"])), 2);
    assert_eq!(code(&run(&["verify", "exact", "--n-max", "0"])), 2);
    assert_eq!(code(&run(&["numbers", "bernoulli", "0"])), 2);
    // a numeric id is unknown to the exact scope
    assert_eq!(code(&run(&["verify", "exact", "--ids", "eq3_7"])), 2);
}

#[test]
fn verify_exact_streams_json_and_passes() {
    let out = run(&["verify", "exact", "--n-max", "8", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let records = json_lines(&out);
    assert!(records.len() >= 40);
    for r in &records {
        assert_eq!(r["kind"], "exact");
        assert_ne!(r["status"], "fail", "{r}");
        assert!(r["verdicts"].is_array());
    }
}

#[test]
fn verify_numeric_eq3_7() {
    let out = run(&["verify", "numeric", "--ids", "eq3_7", "--prec", "30", "--format", "json"]);
    assert_eq!(code(&out), 0);
    for r in json_lines(&out) {
        assert_eq!(r["pass"], true);
        assert_eq!(r["prec"], 30);
        let rel: f64 = r["rel_diff"].as_str().unwrap().parse().unwrap();
        assert!(rel < 1e-8);
        for key in ["id", "lhs", "rhs", "tol"] {
            assert!(r[key].is_string(), "{key}");
        }
    }
}

#[test]
fn verify_all_with_mixed_ids() {
    let out = run(&["verify", "all", "--ids", "thm4,moments", "--n-max", "5", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,id,params,status,lhs,rhs,rel_diff,tol"));
    let kinds: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(kinds, ["exact", "numeric", "numeric", "numeric"]);
}

#[test]
fn tolerance_too_tight_fails_with_exit_1() {
    // the two routes to ζ(3) agree to about 1e-38, far from 1e-60
    let out = run(&["verify", "numeric", "--ids", "zeta_oracle", "--tol", "1e-60"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("1 failed"));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = std::env::temp_dir().join(format!("shefferzeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let args = ["verify", "exact", "--n-max", "6", "--format", "json", "--output", path.to_str().unwrap()];
    assert_eq!(code(&run(&args)), 0);
    let first = std::fs::read(&path).unwrap();
    assert_eq!(code(&run(&args)), 0);
    assert_eq!(first, std::fs::read(&path).unwrap());
    let direct = run(&["verify", "exact", "--n-max", "6", "--format", "json"]);
    assert_eq!(first, direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
