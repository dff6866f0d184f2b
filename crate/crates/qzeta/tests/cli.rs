use std::process::{Command, Output};

use qzeta::parse_poly;
use qzeta_core::arith::CycloProduct;
use qzeta_core::carlitz::beta;
use qzeta_core::{Rat, RatFunc};

fn qzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzeta")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<serde_json::Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn factored_beta_is_exact() {
    let out = qzeta(&["carlitz", "beta", "--n", "2", "--factored"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), r#"{"n":2,"num":"q","den_cyclotomic":[2,3]}"#);
}

#[test]
fn beta_json_round_trip() {
    let out = qzeta(&["carlitz", "beta", "--max-n", "12", "--factored"]);
    assert!(out.status.success());
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 13);
    for row in rows {
        let n = row["n"].as_u64().unwrap();
        let num = parse_poly(row["num"].as_str().unwrap()).unwrap();
        let mut den = CycloProduct::new();
        for k in row["den_cyclotomic"].as_array().unwrap() {
            den.push(k.as_u64().unwrap(), 1);
        }
        let back = RatFunc::<Rat>::new(num, den.expand()).unwrap();
        assert_eq!(back, beta(n).value, "n = {n}");
    }
}

#[test]
fn expanded_denominator() {
    let out = qzeta(&["carlitz", "beta", "--n", "3"]);
    let row = &json_lines(&out)[0];
    let num = parse_poly(row["num"].as_str().unwrap()).unwrap();
    let den = parse_poly(row["den"].as_str().unwrap()).unwrap();
    assert_eq!(RatFunc::new(num, den).unwrap(), beta(3).value);
}

#[test]
fn verify_reports_and_exit_codes() {
    let out = qzeta(&["carlitz", "verify-theorem", "--max-n", "4", "--method", "all", "--order", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 3 * 3 + 1);
    assert!(rows[..9].iter().all(|r| r["status"] == "pass"));
    assert_eq!(rows[9]["pass"], true);
    assert_eq!(rows[9]["checks"], 9);
}

#[test]
fn hurwitz_zero_is_outside_exact_mode() {
    let out = qzeta(&["hurwitz", "verify", "--x", "1/2", "--min-n", "0", "--max-n", "1", "--method", "geometric"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_lines(&out);
    assert_eq!(rows[0]["status"], "outside_exact_mode");
    assert_eq!(rows[1]["status"], "pass");
}

#[test]
fn constant_term_is_an_error() {
    let out = qzeta(&["zeta", "apply", "--s", "0", "--poly", "1+q"]);
    assert_eq!(out.status.code(), Some(2));
    let row = &json_lines(&out)[0];
    assert!(row["error"].as_str().unwrap().contains("constant term"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qzeta(&["carlitz", "beta"]).status.code(), Some(2));
    assert_eq!(qzeta(&["--format", "csv", "carlitz", "beta", "--n", "2"]).status.code(), Some(2));
    assert_eq!(qzeta(&["dirichlet", "list", "--modulus", "0"]).status.code(), Some(2));
    assert_eq!(qzeta(&["zeta", "apply", "--s", "1", "--poly", "q"]).status.code(), Some(2));
}

#[test]
fn survey_csv() {
    let out = qzeta(&["--format", "csv", "roots", "survey", "--max-n", "4"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["n", "re", "im", "abs", "class", "residual"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    // beta_2 = q/..., beta_3 = q(1-q)/..., beta_4 has a quartic factor
    assert_eq!(rows.iter().filter(|r| &r[0] == "2").count(), 0);
    assert_eq!(rows.iter().filter(|r| &r[0] == "3").count(), 1);
    assert_eq!(rows.iter().filter(|r| &r[0] == "4").count(), 4);
    let classes: Vec<&str> = rows.iter().filter(|r| &r[0] == "4").map(|r| r.get(4).unwrap()).collect();
    assert_eq!(classes.iter().filter(|&&c| c == "real_positive").count(), 2);
    assert_eq!(classes.iter().filter(|&&c| c == "on_unit_circle").count(), 2);
    for r in &rows {
        assert!(r[5].parse::<f64>().unwrap() <= 1e-12);
    }
}

#[test]
fn character_listing() {
    let out = qzeta(&["dirichlet", "list", "--modulus", "5"]);
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[2]["values"], serde_json::json!(["0", "1", "-1", "-1", "1"]));
    assert_eq!(rows[1]["real"], false);
}
