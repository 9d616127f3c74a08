use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn wlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wlab")).args(args).env_remove("WLAB_DEFAULT_PRECISION").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn pair(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn literal(name: &str, body: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn geometric_sum_at_one() {
    let o = wlab(&["eval", "--fn", "geom3", "--at", "1", "--precision", "16", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let (lo, hi) = pair(&json(&o)["value"]["re"]);
    // Σ 3^-k = 3/2
    assert!(lo <= 1.5 && 1.5 <= hi && hi - lo <= 2f64.powi(-16), "[{lo}, {hi}]");
    assert!(stdout(&wlab(&["eval", "--fn", "geom3", "--at", "1", "--precision", "16"])).starts_with("geom3(1) in [1.49"));
}

#[test]
fn catalog_reduction_is_verified() {
    let o = wlab(&["reduce", "count_le_cn", "--instance", "supp257"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("answer: 3, verified"), "{}", stdout(&o));
    let by_index = wlab(&["reduce", "count_le_cn", "--instance", "0"]);
    assert!(stdout(&by_index).contains("answer: 3, verified"));
}

#[test]
fn bump_name_validates() {
    let o = wlab(&["validate", "--name", "bump0", "--depth", "3", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["valid"], Value::Bool(true));
    assert_eq!(v["entries"].as_array().unwrap().len(), 3);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["ok"] == Value::Bool(true)));
}

#[test]
fn reference_points_validate() {
    for name in ["pi", "geom3"] {
        let o = wlab(&["validate", "--name", name, "--depth", "12"]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
        assert!(stdout(&o).ends_with("valid\n"));
    }
}

#[test]
fn identical_invocations_give_identical_output() {
    for args in [
        &["eval", "--fn", "inv2", "--at", "1/2,1/3", "--precision", "12", "--format", "json"][..],
        &["list", "--format", "json"][..],
        &["zeros", "--instance", "roots_1_mhalf", "--precision", "12", "--format", "json"][..],
    ] {
        let (a, b) = (wlab(args), wlab(args));
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        &["frobnicate"][..],
        &["reduce", "no_such_reduction", "--instance", "0"][..],
        &["reduce", "count_le_cn", "--instance", "no_such_instance"][..],
        &["reduce", "count_le_cn"][..],
        &["eval", "--fn", "unknown_fn"][..],
        &["eval", "--fn", "geom3", "--at", "2"][..],
        &["list", "--format", "csv"][..],
        &["eval", "--fn", "geom3", "--precision", "-1"][..],
    ] {
        let o = wlab(args);
        assert_eq!(code(&o), 1, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn starved_oracle_fails_verification() {
    let o = wlab(&["reduce", "count_le_cn", "--instance", "supp257", "--fuel", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("verification failed"));
    let fed = wlab(&["reduce", "count_le_cn", "--instance", "supp257", "--fuel", "20000"]);
    assert_eq!(code(&fed), 0, "{}", stdout(&fed));
}

#[test]
fn precision_falls_back_to_environment() {
    let run = |env: &str| {
        Command::new(env!("CARGO_BIN_EXE_wlab"))
            .args(["eval", "--fn", "geom3", "--at", "1/2", "--format", "json"])
            .env("WLAB_DEFAULT_PRECISION", env)
            .output()
            .unwrap()
    };
    let o = run("7");
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["precision"], 7);
    assert_eq!(code(&run("seven")), 1);
    let flag = wlab(&["eval", "--fn", "geom3", "--precision", "9", "--format", "json"]);
    assert_eq!(json(&flag)["precision"], 9);
}

#[test]
fn csv_series_columns() {
    let o = wlab(&["eval", "--fn", "geom3", "--at", "1", "--precision", "6", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,lower,upper"));
    let rows: Vec<(u64, f64, f64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 7);
    for (j, lo, hi) in rows {
        assert!(lo <= 1.5 && 1.5 <= hi && hi - lo <= 2f64.powi(-(j as i32)), "row {j}");
    }
}

#[test]
fn germ_and_derivative_verbs() {
    let o = wlab(&["germ", "--fn", "inv2", "--k", "6", "--precision", "14", "--format", "json"]);
    assert_eq!(code(&o), 0);
    for (k, c) in json(&o)["coefficients"].as_array().unwrap().iter().enumerate() {
        let (lo, hi) = pair(&c["value"]["re"]);
        // 1/(2 - z) = Σ 2^-(k+1) z^k
        let want = 2f64.powi(-(k as i32) - 1);
        assert!(lo <= want && want <= hi && hi - lo <= 2f64.powi(-14), "a_{k}: [{lo}, {hi}]");
    }
    let d = wlab(&["diff", "--fn", "gadget1", "--at", "1", "--precision", "10", "--format", "json"]);
    assert_eq!(code(&d), 0);
    let (lo, hi) = pair(&json(&d)["value"]["re"]);
    assert!(lo <= 1.0 && 1.0 <= hi);
    let s = wlab(&["sum", "--germ", "ind:0,2,5", "--at", "1", "--precision", "10", "--format", "json"]);
    let (lo, hi) = pair(&json(&s)["value"]["re"]);
    assert!(lo <= 3.0 && 3.0 <= hi);
}

#[test]
fn polynomial_literals() {
    // 4X^2 - 1 has roots ±1/2
    let p = literal("quadratic.json", r#"{"bound": 3, "coeffs": [[-1, 1, 0, 1], [0, 1, 0, 1], [4, 1, 0, 1]]}"#);
    let p = p.to_str().unwrap();
    let z = wlab(&["zeros", "--file", p, "--precision", "16", "--format", "json"]);
    assert_eq!(code(&z), 0, "{}", stdout(&z));
    let v = json(&z);
    assert_eq!(v["degree"], 2);
    for want in [-0.5, 0.5] {
        assert!(v["roots"].as_array().unwrap().iter().any(|r| {
            let (lo, hi) = pair(&r["value"]["re"]);
            lo <= want && want <= hi
        }));
    }
    let d = wlab(&["deg", "--file", p]);
    assert_eq!(code(&d), 0);
    assert!(stdout(&d).contains("degree: 2, verified"));
    let e = wlab(&["eval", "--file", p, "--at", "1/2", "--precision", "12", "--format", "json"]);
    let (lo, hi) = pair(&json(&e)["value"]["re"]);
    assert!(lo <= 0.0 && 0.0 <= hi);
    let bad = literal("bad_poly.json", r#"{"bound": 1, "coeffs": [[1, 1, 0, 1], [0, 1, 0, 1], [4, 1, 0, 1]]}"#);
    assert_eq!(code(&wlab(&["deg", "--file", bad.to_str().unwrap()])), 1);
}

#[test]
fn family_descriptors() {
    let f = literal("two_bumps.json", r#"{"kind": "sum", "shifts": ["0", "5/2"], "weights": ["1", "-1/3"]}"#);
    let f = f.to_str().unwrap();
    let o = wlab(&["bump", "--file", f, "--at", "5/2", "--precision", "20", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let (lo, hi) = pair(&json(&o)["derivatives"][0]["value"]);
    // only the second bump is nonzero at 5/2, with peak value -1/3
    assert!(lo <= -1.0 / 3.0 && -1.0 / 3.0 <= hi && hi - lo < 1e-5, "[{lo}, {hi}]");
    let s = wlab(&["seminorm", "--file", f, "--d", "0", "--m", "0", "--precision", "8", "--format", "json"]);
    let (lo, hi) = pair(&json(&s)["value"]);
    assert!(lo <= 1.0 && 1.0 <= hi);
    let bad = literal("bad_family.json", r#"{"kind": "bump", "shifts": ["0", "1"]}"#);
    assert_eq!(code(&wlab(&["bump", "--file", bad.to_str().unwrap()])), 1);
}

#[test]
fn name_literals() {
    let p = literal("stream.json", r#"{"values": [0, 4, 0, 1, 1], "generator": "const", "tail": 0}"#);
    let o = wlab(&["reduce", "count_le_cn", "--file", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("answer: 3, verified"));
    let m = literal("min.json", r#"{"values": [7, 5, 9], "generator": "const", "tail": 6}"#);
    let o = wlab(&["reduce", "min_le_deg", "--file", m.to_str().unwrap()]);
    assert!(stdout(&o).contains("answer: 5, verified"), "{}", stdout(&o));
    let unknown = literal("cycle.json", r#"{"values": [1], "generator": "cycle"}"#);
    assert_eq!(code(&wlab(&["reduce", "count_le_cn", "--file", unknown.to_str().unwrap()])), 1);
}

#[test]
fn bump_polynomials_and_listing() {
    let o = wlab(&["bump", "--poly", "2", "--format", "json"]);
    let v = json(&o);
    // p_2 = 6x^4 - 2
    assert_eq!(v["coefficients"], serde_json::json!(["-2", "0", "0", "0", "6"]));
    let l = stdout(&wlab(&["list"]));
    assert!(l.lines().any(|line| line.starts_with("count_le_cn: Count <= C_N")));
    assert!(l.lines().count() >= 35);
}
