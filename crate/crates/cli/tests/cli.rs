use std::process::{Command, Output};

use serde_json::Value;

const C37: &str = "0,0,1,-1,0";
const C11: &str = "0,-1,1,-10,-20";
const C361: &str = "0,0,1,-38,90";

fn wmock(args: &[&str]) -> Output {
    wmock_env(args, None)
}

fn wmock_env(args: &[&str], precision: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wmock"));
    cmd.args(args).env_remove("WMOCK_PRECISION");
    if let Some(p) = precision {
        cmd.env("WMOCK_PRECISION", p);
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn real(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

/// Parsing the output and printing it again reproduces it byte for byte.
fn assert_round_trip(out: &Output) {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
}

#[test]
fn mockform_37a1() {
    let out = wmock(&["mockform", "--curve", C37, "--conductor", "37", "--terms", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_round_trip(&out);
    let v = json(&out);
    assert_eq!(v["command"], "mockform");
    let r = &v["result"];
    assert_eq!(r["root_number"], -1);
    let c: Vec<f64> = r["zhat_plus"].as_array().unwrap().iter().map(|x| real(&x["value"]["re"])).collect();
    let printed = [1.0, 1.0, 2.1132, 2.3867, 4.2201, 5.5566, 8.3547];
    for (a, b) in c.iter().zip(printed) {
        assert!((a - b).abs() < 1e-4, "{a} vs {b}");
    }
    assert_eq!(c.len(), 8);
}

#[test]
fn mockform_cm_curve_is_rational() {
    let out = wmock(&["mockform", "--curve", C361, "--conductor", "361", "--terms", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["s_rational"], "-2");
    let q: Vec<&str> = r["zhat_plus"].as_array().unwrap().iter().map(|x| x["rational"].as_str().unwrap()).collect();
    assert_eq!(q, ["1", "0", "2", "1/2", "-7/3"]);
}

#[test]
fn padic_cm_table_passes() {
    let out = wmock(&["padic", "--curve", C361, "--conductor", "361", "-p", "5", "--max-n", "3", "--target-t", "3", "--multiplier", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_round_trip(&out);
    let r = &json(&out)["result"];
    assert_eq!(r["all_pass"], true);
    assert_eq!(r["digits"], serde_json::json!([3, 4, 4]));
    let rows = r["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for (i, row) in rows.iter().enumerate() {
        assert!(row["min_valuation"].as_i64().unwrap() > i as i64);
    }
    let n2 = &rows[1]["residual"];
    assert!(n2.as_array().unwrap().iter().any(|x| x["exponent"] == -25 && x["coefficient"] == "25/4" && x["valuation"] == 2));
}

#[test]
fn trace_37a1_first_row() {
    let out = wmock(&["trace", "--curve", C37, "--conductor", "37", "--delta", "-3", "--d", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_round_trip(&out);
    let t = &json(&out)["result"]["traces"][0];
    let canon: Vec<&Value> = t["coefficients"].as_array().unwrap().iter().filter(|c| c["canonical"] == true).collect();
    assert_eq!(canon.len(), 1);
    assert!((real(&canon[0]["value"]["re"]) + 0.2817617849).abs() < 1e-9);
    let classes = t["classes"].as_array().unwrap();
    assert!(!classes.is_empty());
    assert!(classes.iter().all(|c| c["form"][0].as_i64().unwrap() % 37 == 0));
}

#[test]
fn trace_of_j_gives_zagier_coefficient() {
    let out = wmock(&["trace", "--function", "j", "--delta", "-3", "--d", "1", "--brief"]);
    assert_eq!(out.status.code(), Some(0));
    let t = &json(&out)["result"]["traces"][0];
    assert!((real(&t["tr_minus"]["re"]) + 248.0).abs() < 1e-30);
    assert!(t.get("classes").is_none());
}

#[test]
fn lvalues_in_double_precision() {
    let out = wmock(&["lvalues", "--curve", C11, "--conductor", "11", "--d", "1", "--err", "1e-10", "--double"]);
    assert_eq!(out.status.code(), Some(0));
    assert_round_trip(&out);
    let row = &json(&out)["result"]["rows"][0];
    assert_eq!(row["target"], "value");
    assert!((real(&row["value"]) - 0.2538418608559107).abs() < 1e-9);
    // the bound is 1.9e-10, so nine decimals are certified and printed
    assert_eq!(row["error_bound"], "1.9e-10");
    assert_eq!(row["value"].as_str().unwrap(), "2.53841861e-1");
}

#[test]
fn verify_filtered() {
    let out = wmock(&["verify", "--filter", "zagier"]);
    assert_eq!(out.status.code(), Some(0));
    assert_round_trip(&out);
    let r = &json(&out)["result"];
    assert_eq!(r["summary"]["pass"], 1);
    assert_eq!(r["cases"][0]["status"], "pass");
    assert_eq!(wmock(&["verify", "--filter", "no-such-case"]).status.code(), Some(2));
}

#[test]
fn precision_from_environment() {
    let out = wmock_env(&["mockform", "--curve", C37, "--conductor", "37", "--terms", "1"], Some("128"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["precision_bits"], 128);
    let out = wmock_env(&["--precision", "96", "mockform", "--curve", C37, "--conductor", "37", "--terms", "1"], Some("128"));
    assert_eq!(json(&out)["precision_bits"], 96);
    assert_eq!(wmock_env(&["mockform", "--curve", C37, "--conductor", "37"], Some("32")).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["mockform", "--curve", C37, "--conductor", "37", "--bogus"],
        vec!["--precision", "63", "mockform", "--curve", C37, "--conductor", "37"],
        vec!["--series-terms", "15", "mockform", "--curve", C37, "--conductor", "37"],
        vec!["mockform", "--curve", "0,0,1,-1", "--conductor", "37"],
        vec!["frobnicate"],
        vec!["trace", "--delta", "-3", "--d", "1"],
    ] {
        let out = wmock(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn computational_errors_exit_1_with_json() {
    let out = wmock(&["mockform", "--curve", "0,0,0,0,0", "--conductor", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "curve");
    let out = wmock(&["padic", "--curve", C11, "--conductor", "11", "-p", "11"]);
    assert_eq!(out.status.code(), Some(1));
    assert_round_trip(&out);
    let e = json(&out);
    assert_eq!(e["error"]["kind"], "padic");
    assert!(e["error"]["message"].as_str().unwrap().contains("divides"));
    let out = wmock(&["lvalues", "--curve", C37, "--conductor", "37", "--d", "37"]);
    assert_eq!(out.status.code(), Some(1));
}
