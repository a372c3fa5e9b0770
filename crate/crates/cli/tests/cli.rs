use std::process::{Command, Output};

use serde_json::Value;
use stochord::Model;

fn stochord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stochord"))
        .args(args)
        .env_remove("STOCHORD_THREADS")
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

const CROSS_A: &str = "min[ge:alpha=2,lambda=4, ge:alpha=2,lambda=0.5]";
const CROSS_B: &str = "min[ge:alpha=2,lambda=2, ge:alpha=2,lambda=3]";

#[test]
fn maj_exp_weak_example() {
    let o = stochord(&[
        "maj", "check", "--x", "0.5,0.9", "--y", "1.08,0.3", "--order", "exp_weak",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    assert_eq!(j["schema"], 1);
    assert_eq!(j["result"]["verdict"]["holds"], true);
    assert!(j["defaults"]["order_grid_points"].is_number());
}

#[test]
fn maj_violation_exits_one() {
    let o = stochord(&[
        "maj", "check", "--x", "0.5,0.9", "--y", "1.08,0.3", "--order", "weak_sub",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["result"]["verdict"]["failed_index"], 2);
}

#[test]
fn maj_f_majorization() {
    let o = stochord(&[
        "maj",
        "check",
        "--x",
        "2,4.795831523312719",
        "--y",
        "1.4142135623730951,5",
        "--map",
        "power:p=2",
        "--flavor",
        "major",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn theorem_verify_example() {
    let o = stochord(&[
        "theorem",
        "verify",
        "--id",
        "GE_MIN_HR_ALPHA_COR",
        "--alpha",
        "3,1",
        "--alpha-star",
        "2,2",
        "--lambda",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let j = json(&o);
    let r = &j["result"];
    assert_eq!(r["status"], "confirmed");
    assert_eq!(r["schema"], 1);
    for m in r["models"].as_array().unwrap() {
        let text = m.as_str().unwrap();
        let parsed: Model = text.parse().unwrap();
        assert_eq!(parsed.to_string(), text);
    }
}

#[test]
fn theorem_verify_rejects_malformed_instances() {
    let o = stochord(&[
        "theorem",
        "verify",
        "--id",
        "GE_MIN_HR_ALPHA_COR",
        "--alpha",
        "3,1",
        "--lambda",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = stochord(&[
        "theorem",
        "verify",
        "--id",
        "NOT_A_THEOREM",
        "--alpha",
        "3,1",
        "--alpha-star",
        "2,2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn plot_emit_crossing_pair() {
    let o = stochord(&[
        "plot", "emit", "--model", CROSS_A, "--model", CROSS_B, "--fn", "sf", "--lo", "0.01", "--hi", "5",
        "--n", "500",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(!text.contains('\r'));
    let mut rd = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        vec!["x".to_string(), CROSS_A.to_string(), CROSS_B.to_string()]
    );
    let rows: Vec<Vec<f64>> = rd
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse::<f64>().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 500);
    let first = text.lines().nth(1).unwrap();
    let mantissa = first.split(',').next().unwrap().split('e').next().unwrap();
    assert_eq!(mantissa.replace(['.', '-'], "").len(), 17);
    let signs: Vec<bool> = rows.iter().map(|r| r[1] > r[2]).collect();
    assert!(
        signs.windows(2).any(|w| w[0] != w[1]),
        "the survival curves cross"
    );
}

#[test]
fn order_check_crossing_exits_one() {
    let o = stochord(&["order", "check", "--f", CROSS_A, "--g", CROSS_B, "--order", "st"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["result"]["verdict"]["relation"], "crossing");
}

#[test]
fn numerical_failure_exits_three() {
    let o = stochord(&[
        "order",
        "check",
        "--f",
        "ge:alpha=2,lambda=50",
        "--g",
        "ge:alpha=2,lambda=60",
        "--order",
        "hr",
        "--lo",
        "1",
        "--hi",
        "100",
        "--n",
        "64",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        stochord(&["maj", "check", "--x", "1,2", "--y", "2,1", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        stochord(&["dist", "eval", "--model", "ge:alpha=2", "--x", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        stochord(&["dist", "eval", "--model", "nope:a=1", "--x", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        stochord(&["maj", "check", "--x", "1,x", "--y", "2,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(stochord(&[]).status.code(), Some(2));
}

#[test]
fn search_fixture_counterexample() {
    let o = stochord(&[
        "search",
        "run",
        "--family",
        "ge",
        "--alpha",
        "2",
        "--hypothesis",
        "exp_weak",
        "--expect",
        "either",
        "--fixture",
        "4,0.5;2,3",
        "--n",
        "50",
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let j = json(&o);
    assert_eq!(j["result"]["counterexample"]["index"], 0);
    assert_eq!(j["result"]["counterexample"]["fixture"], true);
}

#[test]
fn output_independent_of_thread_count() {
    let args = [
        "search",
        "run",
        "--family",
        "ge",
        "--alpha",
        "0.6",
        "--hypothesis",
        "p_larger",
        "--n",
        "120",
        "--seed",
        "5",
    ];
    let base = stochord(&args);
    let one = Command::new(env!("CARGO_BIN_EXE_stochord"))
        .args(args)
        .env("STOCHORD_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(base.status.code(), one.status.code());
    assert_eq!(base.stdout, one.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_stochord"))
        .args(args)
        .env("STOCHORD_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("stochord-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q.json");
    let o = stochord(&[
        "dist",
        "quantile",
        "--model",
        "weibull:shape=2,scale=1",
        "--p",
        "0.5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let q = j["result"]["quantiles"][0].as_f64().unwrap();
    assert!((q - 2f64.ln().sqrt()).abs() < 1e-12);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn extreme_eval_csv() {
    let o = stochord(&[
        "extreme",
        "eval",
        "--model",
        "max[frechet:mu=0,lambda=1,alpha=2, frechet:mu=0,lambda=2,alpha=2]",
        "--fn",
        "rev_hazard",
        "--x",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let v: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((v - 10.0 / 27.0).abs() < 1e-12);
}

#[test]
fn theorem_suite_and_arch_batch() {
    let o = stochord(&[
        "theorem",
        "suite",
        "--id",
        "SCALE_MIN_HR",
        "--n",
        "20",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"][0]["refuted"], 0);
    let o = stochord(&["theorem", "arch-batch", "--n", "6", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["conflicts"].as_array().unwrap().len(), 1);
}
