use std::process::{Command, Output};

use serde_json::Value;

fn algtool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algtool")).args(args).output().expect("algtool runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = algtool(&full);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn keys_sorted(v: &Value) -> bool {
    match v {
        Value::Object(m) => {
            let keys: Vec<_> = m.keys().collect();
            keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(keys_sorted)
        }
        Value::Array(items) => items.iter().all(keys_sorted),
        _ => true,
    }
}

#[test]
fn hilbert_of_the_cycle_algebra() {
    let v = json(&["hilbert", "--algebra", "cycle", "--p", "5", "--max-degree", "4"]);
    assert_eq!(v, serde_json::json!({ "hilbert": [1, 5, 10, 15, 20] }));
}

#[test]
fn e1_character_of_the_polynomial_ring() {
    let v = json(&["charseries", "--algebra", "polynomial", "--p", "3", "--max-degree", "3", "--class", "e1"]);
    let coeffs: Vec<String> = v["coeffs"].as_array().unwrap().iter().map(|c| c["coeffs"][0].as_str().unwrap().to_owned()).collect();
    assert_eq!(coeffs, ["1", "0", "0", "1"]);
    assert!(v["coeffs"].as_array().unwrap().iter().all(|c| c["coeffs"][1] == "0"));
}

#[test]
fn full_character_table_has_every_class() {
    let v = json(&["charseries", "--algebra", "sklyanin5", "--params", "2,-3/2", "--max-degree", "2"]);
    assert_eq!(v["classes"].as_array().unwrap().len(), 29);
    assert_eq!(v["hilbert"], serde_json::json!([1, 5, 15]));
    assert!(keys_sorted(&v));
}

#[test]
fn elimination_report() {
    let v = json(&["sklyanin2", "eliminate"]);
    assert_eq!(v["check"], true);
    assert_eq!(v["cofactor"], "-4 * a^5 * b^3");
}

#[test]
fn t_parameter_modes() {
    assert_eq!(json(&["sklyanin2", "t", "--a", "1", "--b", "1"])["t"], "1/2");
    assert_eq!(json(&["sklyanin2", "t", "--a", "2", "--b", "2"])["indeterminate"], true);
    assert_eq!(json(&["sklyanin2", "t", "--a", "1.0", "--b", "1.0"])["t"], 0.5);
}

#[test]
fn clifford_strata_at_a_rank_two_point() {
    let v = json(&["clifford-strata", "--form", "three-dim", "--params", "-1", "--point", "1,1,1"]);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["simple"], serde_json::json!({ "count": 1, "dim": 2 }));
    assert_eq!(v["fat"], serde_json::json!({ "count": 2, "multiplicity": 1 }));
}

#[test]
fn shioda_subcommands_pass() {
    assert_eq!(json(&["shioda5", "minors"])["count"], 10);
    assert_eq!(json(&["shioda5", "orbit", "--a", "2"])["pass"], true);
    assert_eq!(json(&["shioda5", "fiber"])["cusp_cycles"], 12);
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["shioda5", "two-torsion", "--samples", "5", "--seed", "7", "--format", "json"];
    assert_eq!(algtool(&args).stdout, algtool(&args).stdout);
}

#[test]
fn failed_check_exits_two() {
    let out = algtool(&["sklyanin2", "ideal", "--a", "1", "--span-tol", "1e-300", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["deg6"], false);
}

#[test]
fn errors_exit_one_with_a_code() {
    let out = algtool(&["hilbert", "--algebra", "nope", "--p", "5", "--max-degree", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "unknown_kind");
    assert!(err["message"].as_str().unwrap().contains("nope"));

    let out = algtool(&["hilbert", "--algebra", "polynomial", "--p", "5", "--max-degree", "8", "--max-cells", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[resource]"));

    let out = algtool(&["sklyanin2", "minors", "--a", "0.7", "--b", "0.3"]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(algtool(&["bogus"]).status.code(), Some(1));
}

#[test]
fn cap_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_algtool"))
        .args(["hilbert", "--algebra", "polynomial", "--p", "5", "--max-degree", "8"])
        .env("ALGTOOL_MAX_CELLS", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("algtool-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.json");
    let out = algtool(&["hilbert", "--algebra", "polynomial", "--p", "3", "--max-degree", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["hilbert"], serde_json::json!([1, 3, 6]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_output_renders_cyclotomics() {
    let out = algtool(&["charseries", "--algebra", "polynomial", "--p", "3", "--max-degree", "1", "--class", "z"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("class:"));
    assert!(!text.contains("\"p\""));
}
