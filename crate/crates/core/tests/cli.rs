use std::process::Command;

fn gf2k(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gf2k"))
        .args(args)
        .env_remove("GF2K_K")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn solve_p_one_root() {
    let (code, out, _) = gf2k(&["solve-p", "--k", "3", "--l", "1", "--a", "0x3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"class":"one","roots":["0x5"],"Z":"0x0","C":"0x4"}"#);
}

#[test]
fn solve_p_zero_parameter() {
    let (code, out, _) = gf2k(&["solve-p", "--k", "3", "--l", "1", "--a", "0x0"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"class":"two","roots":["0x0","0x1"]}"#);
}

#[test]
fn census_p() {
    let (code, out, _) = gf2k(&["census", "--family", "p", "--k", "4", "--l", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["counts"], serde_json::json!({"0": 6, "1": 4, "2": 5, "5": 0}));
    assert_eq!(v["match"], true);
}

#[test]
fn solve_f_and_q() {
    let (code, out, _) = gf2k(&["solve-f", "--k", "3", "--l", "1", "--a", "0x2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"arity":1,"roots":["0x5"],"trace_class":"0x1"}"#);
    let (code, out, _) = gf2k(&["solve-q", "--k", "3", "--l", "2", "--a", "0x5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kernel"].as_array().unwrap().len() as u64, v["kernel_size"].as_u64().unwrap());
}

#[test]
fn env_overrides_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_gf2k"))
        .args(["solve-p", "--a", "0x3"])
        .env("GF2K_K", "3")
        .env("GF2K_L", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains(r#""roots":["0x5"]"#));
}

#[test]
fn usage_errors_exit_2() {
    let (code, out, err) = gf2k(&["solve-p", "--k", "3"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(!err.is_empty());
    let (code, _, err) = gf2k(&["field-info", "--k", "3", "--poly", "0xf"]);
    assert_eq!(code, 2);
    assert!(err.contains("reducible"));
    let (code, _, _) = gf2k(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_small_grid() {
    let (code, out, _) = gf2k(&["verify", "--max-k", "4", "--q-max-k", "3", "--threads", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 10);
    assert!(suites.iter().any(|s| s["report_only"] == true));
}

#[test]
fn dobbertin_checkpoint() {
    let (code, out, _) = gf2k(&["dobbertin", "--k", "3", "--l", "2", "--x", "0x4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["R"], "0x2");
    assert_eq!(v["q_bijective"], true);
    let (code, _, _) = gf2k(&["dobbertin", "--k", "4", "--l", "2"]);
    assert_eq!(code, 2);
}
