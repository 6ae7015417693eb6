use std::process::{Command, Output};

use serde_json::Value;

fn triperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triperm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = triperm(&all);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("json output"))
}

const TRI: &str = "(x1+2*x1^2, x1 + x2*(1+2*x1))";

#[test]
fn induced_order_f2() {
    let o = triperm(&["induced-order", "--ring", "F2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "8");
}

#[test]
fn member_accepts_and_rejects() {
    let o = triperm(&["member", "--ring", "Z4", "--n", "2", "--vec", TRI]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "accepted"));
    let (code, v) = json(&["member", "--ring", "Z4", "--n", "2", "--vec", "(x1^2, x2)"]);
    assert_eq!(code, 1);
    assert_eq!(v["member"], false);
    let (code, _) = json(&["member", "--ring", "Z4", "--n", "2", "--vec", "(x1, x1*x2^2)"]);
    assert_eq!(code, 1);
}

#[test]
fn group_props_f3() {
    let (code, v) = json(&["group-props", "--ring", "F3", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!((v["solvable"].clone(), v["nilpotent"].clone(), v["abelian"].clone()), (true.into(), false.into(), false.into()));
    assert_eq!(v["order"], 1296);
}

#[test]
fn compose_invert_round_trip() {
    let inv = triperm(&["invert", "--ring", "Z4", "--n", "2", "--vec", TRI]);
    assert_eq!(inv.status.code(), Some(0));
    let inv = stdout(&inv);
    let id = triperm(&["compose", "--ring", "Z4", "--n", "2", "--vec", TRI, &inv]);
    assert_eq!(stdout(&id), "(x1, x2)");
    let o = triperm(&["invert", "--ring", "Z4", "--n", "2", "--vec", "(x1, x2*(x1^2+x1+1))"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn apply_and_solve() {
    let a = triperm(&["apply", "--ring", "Z4", "--n", "2", "--vec", TRI, "--point", "(1, 0)"]);
    let image = stdout(&a);
    let s = triperm(&["solve", "--ring", "Z4", "--n", "2", "--vec", TRI, "--point", &image]);
    assert_eq!(stdout(&s), "(1, 0)");
}

#[test]
fn unit_and_equiv() {
    assert_eq!(stdout(&triperm(&["unit", "--ring", "Z4", "--n", "2", "--vec", TRI])), "true");
    assert_eq!(stdout(&triperm(&["unit", "--ring", "F2", "--n", "2", "--vec", "(x1, x2*(x1^2+x1+1))"])), "false");
    let o = triperm(&["equiv", "--ring", "F2", "--n", "2", "--vec", "(x1^2, x2)", "(x1, x2)"]);
    assert_eq!(stdout(&o), "true");
}

#[test]
fn counts_and_reports() {
    let (code, v) = json(&["count-functions", "--ring", "Z4"]);
    assert_eq!(code, 0);
    assert_eq!((v["F"].clone(), v["FU"].clone(), v["P"].clone()), (64.into(), 16.into(), 8.into()));
    let (code, v) = json(&["verify-ratios", "--ring", "F2[t]/t^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["match"], true);
    assert_eq!(json(&["verify-order", "--ring", "F3", "--n", "2"]).0, 0);
    let (code, v) = json(&["tr-vs-mt", "--ring", "Z4", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["counts"]["TR"], "2048");
    let (code, v) = json(&["verify-decomposition", "--ring", "F3", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["map_homomorphic"], true);
    assert_eq!(json(&["verify-decomposition", "--ring", "Z4", "--n", "3", "--level", "group", "--samples", "20"]).0, 0);
}

#[test]
fn dual_commands() {
    let o = triperm(&["dual-eval", "--ring", "Z4", "--poly", "(x^2, 0)", "--poly", "(x, 1)"]);
    assert_eq!(stdout(&o), "x1^2 + (2*x1)*a1");
    assert_eq!(stdout(&triperm(&["dual-perm", "--ring", "F3", "--poly", "(x^3, 0)"])), "false");
    let (code, v) = json(&["embed", "--ring", "Z4", "--poly", "(x+2*x^2, 1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["vec"], "(2*x1^2 + x1, x2 + 1)");
    assert_eq!(v["table"].as_array().unwrap().len(), 16);
    assert_eq!(triperm(&["embed", "--ring", "F3", "--poly", "(x^3, 0)"]).status.code(), Some(1));
}

#[test]
fn verify_all_per_ring() {
    for ring in ["F2", "F3", "Z4"] {
        let o = triperm(&["verify-all", "--ring", ring, "--n", "2"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(triperm(&["induced-order", "--ring", "Q7"]).status.code(), Some(2));
    assert_eq!(triperm(&["member", "--ring", "Z4", "--vec", "(x1+, x2)"]).status.code(), Some(2));
    assert_eq!(triperm(&["count-functions", "--ring", "Z4", "--k", "3", "--cap", "1000"]).status.code(), Some(3));
    assert_eq!(triperm(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn json_is_deterministic() {
    let args = ["tr-vs-mt", "--ring", "F3", "--n", "2", "--format", "json"];
    assert_eq!(triperm(&args).stdout, triperm(&args).stdout);
}
