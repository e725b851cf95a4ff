//! Acceptance criteria 1–9, one pass/fail line each.

use std::process::Command;

use algtool::selftest::{criterion_name, run_criterion, IN_PROCESS};

fn selftest_json(threads: &str) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_algtool"))
        .args(["selftest", "--format", "json"])
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .expect("algtool runs");
    (out.stdout, out.status.code())
}

fn determinism() -> (bool, String) {
    let (one, code1) = selftest_json("1");
    let (many, code4) = selftest_json("4");
    let same = one == many && !one.is_empty();
    let ok = same && code1 == Some(0) && code4 == Some(0);
    (ok, format!("{} bytes, identical: {same}, exit codes {code1:?}/{code4:?}", one.len()))
}

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for id in IN_PROCESS {
        let r = run_criterion(id);
        println!("criterion {id} ({}): {}", r.name, if r.pass { "PASS" } else { "FAIL" });
        if !r.pass {
            println!("  {}", r.details);
            failed.push(id);
        }
    }
    let (ok, note) = determinism();
    println!("criterion 9 ({}): {}", criterion_name(9), if ok { "PASS" } else { "FAIL" });
    if !ok {
        println!("  {note}");
        failed.push(9);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
