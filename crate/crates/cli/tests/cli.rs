use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn wgl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wgl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wgl-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn identity_matrix_has_ratio_one() {
    let path = temp_file("id2.csv", "1,0\n0,1\n");
    let out = wgl(&["norms", "--matrix", path.to_str().unwrap(), "--report", "grothendieck"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    let ratio = doc["result"]["ratio"].as_f64().unwrap();
    assert!((ratio - 1.0).abs() < 1e-9, "{ratio}");
}

#[test]
fn complex_matrix_from_json() {
    let path = temp_file("c.json", r#"{"re": [[0, 0], [0, -1]], "im": [[2, 0], [0, 1]]}"#);
    let out = wgl(&["norms", "--matrix", path.to_str().unwrap(), "--restarts", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let v = doc["result"]["complex_sandwich"]["certificate"]["value"].as_f64().unwrap();
    assert!((v - (2.0 + 2f64.sqrt())).abs() < 1e-9);
}

#[test]
fn cascade_pair_residual_is_small() {
    let out = wgl(&["cascade", "--n", "3", "--depth", "3", "--variant", "odd", "--pair"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    let pair = &doc["result"]["pair"];
    let residual = pair["residual"].as_f64().unwrap();
    let bound = pair["residual_bound"].as_f64().unwrap();
    assert!(bound <= 0.0054, "{bound}");
    assert!(residual <= bound);
}

#[test]
fn fwht_inline_round_trip() {
    let out = wgl(&["fwht", "--x", "1,2,3,4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let re: Vec<f64> = serde_json::from_value(doc["result"]["re"].clone()).unwrap();
    assert_eq!(re, vec![2.5, -0.5, -1.0, 0.0]);
    let coeff = temp_file("coeff.json", &serde_json::to_string(&doc["result"]).unwrap());
    let back = json(&wgl(&["fwht", "--x", coeff.to_str().unwrap()]));
    let re: Vec<f64> = serde_json::from_value(back["result"]["re"].clone()).unwrap();
    assert_eq!(re, vec![1.0, 2.0, 3.0, 4.0]);
}

#[test]
fn riesz_checks_pass() {
    for check in ["bounds", "conv", "parseval"] {
        let out = wgl(&["riesz", "--n", "4", "--kind", "Q", "--epsilon", "1", "--s", "2", "--check", check]);
        assert_eq!(out.status.code(), Some(0), "{check}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = wgl(&["riesz", "--x", "1,0.5,-0.25", "--kind", "P", "--s", "inf", "--check", "bounds", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("tag,kind,measured,bound"));
}

#[test]
fn uniformize_runs() {
    let out = wgl(&["uniformize", "--n", "6", "--delta", "0.5", "--kappa-samples", "500"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["hard_failure"], false);
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let out = wgl(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = wgl(&["riesz", "--n", "3", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let bad = temp_file("bad.csv", "1,x\n0,1\n");
    let out = wgl(&["norms", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--matrix"));
    let ragged = temp_file("ragged.csv", "1,0\n0\n");
    assert_eq!(wgl(&["norms", "--matrix", ragged.to_str().unwrap()]).status.code(), Some(2));
    let out = wgl(&["riesz", "--x", "1,2,abc"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--x"));
    let out = wgl(&["riesz", "--n", "3", "--kind", "P", "--epsilon", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(wgl(&["cascade", "--n", "3", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn verify_all_passes_and_is_reproducible() {
    let args = ["verify-all", "--max-n", "8", "--seed", "7", "--no-timestamp"];
    let a = wgl(&args);
    let b = wgl(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    let rows = doc["result"]["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["tag"] == "estimate3/Q"));
    assert!(rows.iter().all(|r| r["pass"] == true));
    let stamped = json(&wgl(&["verify-all", "--max-n", "3", "--cases", "8"]));
    assert!(stamped["timestamp"].is_u64());
}

#[test]
fn thread_count_does_not_change_reports() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_wgl"))
            .args(["verify-all", "--max-n", "5", "--cases", "40", "--no-timestamp"])
            .env("WGL_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}
