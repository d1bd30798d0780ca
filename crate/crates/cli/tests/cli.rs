use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmfactor"))
        .args(args)
        .env_remove("GZ_CACHE")
        .env_remove("GZ_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn row(rec: &Value, l: i64) -> &Value {
    rec["rows"].as_array().unwrap().iter().find(|r| r["l"] == l).unwrap()
}

#[test]
fn jfactor_small_pair() {
    let o = run(&["jfactor", "-3", "-4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("J(-3, -4) = -1728"));
    let r = json(&run(&["--json", "jfactor", "-3", "-4"]));
    assert_eq!(r["j_abs"], "1728");
    assert_eq!(r["j_sign"], -1);
    assert_eq!(row(&r, 2)["v_formula"], "2");
    assert_eq!(row(&r, 3)["v_oracle"], "1");
}

#[test]
fn jfactor_h_term() {
    let r = json(&run(&["--json", "jfactor", "-7", "-847"]));
    let r11 = row(&r, 11);
    assert_eq!(r11["v_formula"], "2");
    assert_eq!(r11["v_oracle"], "2");
    let zero = r11["terms"].as_array().unwrap().iter().find(|t| t["m"] == 0).unwrap();
    assert_eq!(zero["value"], "1");
    assert_eq!(zero["mult"], 2);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["jfactor", "-3", "-3"]).status.code(), Some(2));
    assert_eq!(run(&["jfactor", "-5", "-4"]).status.code(), Some(2));
    assert_eq!(run(&["quat-verify", "-7", "2"]).status.code(), Some(2));
    assert_eq!(run(&["vf", "-7", "-3", "4", "3"]).status.code(), Some(2));
    assert_eq!(run(&["--prec-bits", "32", "jfactor", "-3", "-4"]).status.code(), Some(2));
}

#[test]
fn proved_mismatch_sets_the_exit_code() {
    // the literal exponent at l | f2 disagrees with the oracle here
    let o = run(&["--reading", "literal", "jfactor", "-3", "-16"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
    assert_eq!(run(&["jfactor", "-3", "-16"]).status.code(), Some(0));
}

#[test]
fn vf_fractional_value() {
    let v = json(&run(&["--json", "vf", "-3", "-12", "2", "0"]));
    assert_eq!(v["value"], "1/3");
    assert_eq!(v["support"], 2);
    assert_eq!(v["status"], "proved");
}

#[test]
fn precision_override_does_not_change_j() {
    let a = json(&run(&["--json", "jfactor", "-11", "-19"]));
    let b = Command::new(env!("CARGO_BIN_EXE_cmfactor"))
        .args(["--json", "jfactor", "-11", "-19"])
        .env("GZ_PRECISION_BITS", "700")
        .env_remove("GZ_CACHE")
        .output()
        .unwrap();
    let b = json(&b);
    assert_eq!(a["j_abs"], b["j_abs"]);
    assert!(b["precision_used"].as_u64().unwrap() >= 700);
}

#[test]
fn scan_with_warm_cache_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let p = path.to_str().unwrap();
    let args = ["--json", "--cache", p, "scan", "--mode", "classic", "--max-disc", "40"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let cached = std::fs::read_to_string(&path).unwrap();
    let n = stdout(&first).lines().count();
    assert!(n > 0);
    assert_eq!(cached.lines().count(), n);

    let second = run(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(stdout(&second), stdout(&first));
    // nothing new appended
    assert_eq!(std::fs::read_to_string(&path).unwrap(), cached);

    // the environment variable selects the same cache
    let third = Command::new(env!("CARGO_BIN_EXE_cmfactor"))
        .args(["--json", "scan", "--mode", "classic", "--max-disc", "40"])
        .env("GZ_CACHE", p)
        .env_remove("GZ_PRECISION_BITS")
        .output()
        .unwrap();
    assert_eq!(stdout(&third), stdout(&first));
}

#[test]
fn cache_keys_include_the_mode() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let p = path.to_str().unwrap();
    run(&["--cache", p, "jfactor", "-3", "-4"]);
    run(&["--cache", p, "jfactor", "-3", "-4", "--mode", "conjecture"]);
    run(&["--cache", p, "jfactor", "-3", "-4"]);
    let lines: Vec<Value> =
        std::fs::read_to_string(&path).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["mode"], "theorem");
    assert_eq!(lines[1]["mode"], "conjecture");
    assert!(lines.iter().all(|l| l["version"] == 1));
}

#[test]
fn csv_output() {
    let o = run(&["--csv", "jfactor", "-3", "-4"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("d1,d2,mode,l,v_formula,v_oracle,status,matches"));
    assert_eq!(lines.next(), Some("-3,-4,theorem,2,2,2,proved,true"));
}

#[test]
fn quat_verify_ramified() {
    let o = run(&["--json", "quat-verify", "-4", "2", "--max-disc", "24"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["ramified"], true);
    assert_eq!(v["q"], 5);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["ok"] == true));
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["status"] == "conjectural"));
    let proved: Vec<&Value> = rows.iter().filter(|r| r["status"] == "proved").collect();
    assert!(!proved.is_empty());
    assert!(proved.iter().all(|r| r["brute"].to_string() == r["closed"].as_str().unwrap()));
}

#[test]
fn class_group_of_minus_84() {
    let v = json(&run(&["--json", "class-group", "-84"]));
    assert_eq!(v["h"], 4);
    assert_eq!(v["genera"], 4);
    assert_eq!(v["forms"].as_array().unwrap().len(), 4);
}
