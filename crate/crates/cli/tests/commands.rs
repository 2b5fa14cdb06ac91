use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affine-pbw"))
        .args(args)
        .env_remove("AFFINE_PBW_TYPE")
        .env_remove("AFFINE_PBW_RANK")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--format", "json"];
    a.extend_from_slice(args);
    let o = run(&a);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn delta_a2_r3() {
    let o = run(&["delta", "--type", "A", "--rank", "2", "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("closed form: q^6 + 1 + q^(-6)"));
    assert!(out.contains("match: true"));
}

#[test]
fn delta_g2_mismatch_exits_one() {
    let o = run(&["delta", "--type", "G", "--r", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("G2"));
}

#[test]
fn roots_a1_level3() {
    let v = json(&["roots", "--type", "A", "--rank", "1", "--level", "3"]);
    let roots = v["roots"].as_array().unwrap();
    let real = roots.iter().filter(|r| r["root"]["kind"] == "real").count();
    let im: Vec<_> = roots.iter().filter(|r| r["root"]["kind"] == "imaginary").collect();
    assert_eq!(real, 6);
    assert_eq!(im.len(), 3);
    assert!(im.iter().all(|r| r["root"]["mult_index"] == 1));
}

#[test]
fn bell_exp_series() {
    let o = run(&["bell", "--psi", "0,1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Y = 1, 1, (1/2), (1/6)");
    let o = run(&["bell", "--phi", "1,1,1/2,1/6"]);
    assert_eq!(stdout(&o).trim(), "X = 0, 1, 0, 0");
}

#[test]
fn ambiguous_quotient_is_a_usage_error() {
    let o = run(&["bell", "--psi", "0,q^2-1/q-1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["bell", "--psi", "0,(q^2-1)/(q-1)"]);
    assert_eq!(stdout(&o).trim(), "Y = 1, q + 1");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["delta", "--type", "Q", "--rank", "2"]).status.code(), Some(2));
    assert_eq!(run(&["delta", "--type", "E"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let o = run(&["roots", "--type", "A", "--rank", "1", "--iota", "0,0;1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k = 2"));
}

#[test]
fn env_overrides_defaults() {
    let o = Command::new(env!("CARGO_BIN_EXE_affine-pbw"))
        .args(["delta", "--r", "2"])
        .env("AFFINE_PBW_TYPE", "E6")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("match: true"));
}

#[test]
fn dual_c2_is_orthonormal() {
    let v = json(&["dual", "--type", "C", "--rank", "2", "--r", "2"]);
    assert_eq!(v["orthonormal"], true);
    assert_eq!(v["mu"]["r"], 2);
    assert_eq!(v["mu"]["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn gram_json_shape() {
    let v = json(&["gram", "--type", "A", "--rank", "2", "--r", "1"]);
    assert_eq!(v["r"], 1);
    assert_eq!(v["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn pair_divided_against_rescaled_is_a_q_power() {
    let o = run(&["pair", "--type", "A", "--rank", "1", "--level", "2", "--n", "0:2,3:1", "--m", "0:2,3:1"]);
    assert_eq!(stdout(&o).trim(), "q");
    let o = run(&["pair", "--type", "A", "--rank", "1", "--level", "2", "--n", "0:2", "--m", "0:1"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn imroots_first_terms() {
    let o = run(&["imroots", "--family", "e", "--d", "1", "-T", "2"]);
    let out = stdout(&o);
    assert!(out.contains("E_1 = (-1) e1"));
    assert!(out.contains("E_2 ="));
}

#[test]
fn toral_regularity_depends_on_orders() {
    let ok = run(&["toral", "--type", "A", "--rank", "1", "--t-max", "2", "--ell", "5,7"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["toral", "--type", "A", "--rank", "1", "--t-max", "5", "--ell", "5"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("ell=5"));
}
