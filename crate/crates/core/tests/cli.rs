use std::process::Command;

fn hgmkit(args: &[&str]) -> (i32, serde_json::Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hgmkit")).args(args).output().expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (out.status.code().unwrap_or(-1), json, String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn gamma_report() {
    let (code, v, _) = hgmkit(&["gamma", "-18,-1,2,3,5,9", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["alpha0"], "3125/940369969152");
    assert_eq!(v["results"]["order"], 8);
    assert_eq!(v["results"]["expsInf"].as_array().unwrap().len(), 8);
    assert_eq!(v["checks"][0]["status"], "pass");
}

#[test]
fn conic_report() {
    let (code, v, stderr) = hgmkit(&["conic", "analyze", "--alpha", "1/1"]);
    assert_eq!(code, 0, "{stderr}");
    let r = &v["results"];
    assert_eq!((r["genus"].as_u64(), r["coverGenus"].as_u64()), (Some(3), Some(7)));
    assert_eq!(r["fixedPoints"]["total"], 4);
    assert_eq!(r["antiInvariantRank"], 8);
}

#[test]
fn reports_are_deterministic() {
    let a = hgmkit(&["conic", "analyze", "--seed", "7", "--json"]);
    let b = hgmkit(&["conic", "analyze", "--seed", "7", "--json"]);
    assert_eq!(a.1, b.1);
    assert_eq!(a.1["inputs"]["seed"], 7);
}

#[test]
fn exit_codes() {
    assert_eq!(hgmkit(&["--no-such-flag"]).0, 2);
    assert_eq!(hgmkit(&["gamma", "1,2"]).0, 2);
    assert_eq!(hgmkit(&["polytope", "--budget", "10"]).0, 1);
    let (code, v, _) = hgmkit(&["operator"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["reducible"]["order"], 19);
}

#[test]
fn failing_checks_carry_both_values() {
    let (code, v, _) = hgmkit(&["gkz", "restrict"]);
    assert_eq!(code, 1);
    let failed: Vec<_> = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(!failed.is_empty());
    for c in failed {
        assert!(c["expected"].is_string() && c["observed"].is_string());
    }
}
