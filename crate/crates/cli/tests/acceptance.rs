//! Runs every acceptance criterion at full size and prints one line each.
//! Exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use sigdisc::suite::{run_criterion, SuiteParams, CRITERIA};

/// Wall-clock limits per criterion, where one is stated.
fn time_limit(id: u32) -> Option<Duration> {
    match id {
        1 | 5 | 9 => Some(Duration::from_secs(60)),
        2 | 8 => Some(Duration::from_secs(120)),
        _ => None,
    }
}

/// Everything before the timing block; that block is the only part allowed
/// to differ between runs.
fn results_prefix(stdout: &[u8]) -> Vec<u8> {
    let text = String::from_utf8_lossy(stdout);
    let cut = text.find("\"timing\"").unwrap_or(text.len());
    text[..cut].as_bytes().to_vec()
}

fn determinism() -> (bool, String) {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_sigdisc"))
            .args(["--threads", threads, "verify", "paper-suite", "--seed", "7"])
            .output()
            .expect("run sigdisc")
    };
    let outputs = [run("1"), run("1"), run("2")];
    if let Some(bad) = outputs.iter().find(|o| !o.status.success()) {
        return (false, format!("exit code {:?}", bad.status.code()));
    }
    let results = |out: &[u8]| -> String {
        let v: serde_json::Value = serde_json::from_slice(out).expect("JSON report");
        serde_json::to_string(&v["results"]).expect("serialize")
    };
    let (a, b) = (results_prefix(&outputs[0].stdout), results_prefix(&outputs[1].stdout));
    let repeat = a == b;
    let threads = results(&outputs[0].stdout) == results(&outputs[2].stdout);
    (
        repeat && threads,
        format!(
            "{} bytes before timing; repeat identical = {repeat}; 1 vs 2 threads identical = {threads}",
            a.len()
        ),
    )
}

fn main() {
    let params = SuiteParams::default();
    let mut all = true;
    for (id, name) in CRITERIA {
        let start = Instant::now();
        let report = run_criterion(id, &params).expect("known criterion");
        let elapsed = start.elapsed();
        let in_time = time_limit(id).is_none_or(|limit| elapsed < limit);
        let pass = report.pass && in_time;
        all &= pass;
        println!(
            "criterion {id:>2} {:<26} {} ({:.2}s{})",
            name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", over time limit" }
        );
        for check in report.checks.iter().filter(|c| !c.pass || c.informational) {
            let tag = if check.informational { "info" } else { "FAIL" };
            println!("      [{tag}] {}: {}", check.name, check.detail);
        }
    }
    let start = Instant::now();
    let (pass, detail) = determinism();
    all &= pass;
    println!(
        "criterion 10 {:<26} {} ({:.2}s) {detail}",
        "determinism",
        if pass { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    if !all {
        std::process::exit(1);
    }
}
