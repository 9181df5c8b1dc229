//! One line per acceptance criterion. Runs every suite through the CLI
//! entry point with `--json`, then reruns it to compare the bytes.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ordcalc::cli::{parse::parse_term, run};
use serde_json::Value;

const SEED: &str = "20240601";

struct Run {
    json: String,
    code: i32,
    elapsed: Duration,
}

fn suite(name: &str) -> Run {
    let start = Instant::now();
    let out = run(["ordcalc", "check-laws", name, "--json", "--seed", SEED]);
    Run {
        json: out.stdout,
        code: out.code,
        elapsed: start.elapsed(),
    }
}

fn summary(r: &Run) -> (bool, String) {
    let v: Value = match serde_json::from_str(&r.json) {
        Ok(v) => v,
        Err(e) => return (false, format!("unreadable report: {e}")),
    };
    let pass = r.code == 0 && v["status"] == "pass";
    let mut text = format!("{} checks in {} ms", v["checks_run"], r.elapsed.as_millis());
    if !pass {
        let failed = v["cases"]
            .as_array()
            .map(|cs| {
                cs.iter()
                    .filter(|c| c["status"] != "pass")
                    .map(|c| c["id"].to_string())
                    .collect::<Vec<_>>()
            })
            .unwrap_or_default();
        text.push_str(&format!(
            "; failing cases {failed:?}; counterexample {}",
            v["counterexample"]
        ));
    }
    (pass, text)
}

fn golden() -> (bool, String) {
    let text = include_str!("golden/parse_print.tsv");
    let mut diffs = Vec::new();
    let mut n = 0;
    for line in text.lines().filter(|l| !l.is_empty()) {
        n += 1;
        let (input, expected) = line.split_once('\t').expect("tab separated");
        let printed = parse_term(input).map(|t| t.to_string());
        let reprinted = parse_term(expected).map(|t| t.to_string());
        if printed.as_deref() != Ok(expected) || reprinted.as_deref() != Ok(expected) {
            diffs.push(input.to_string());
        }
    }
    (
        n >= 30 && diffs.is_empty(),
        format!("{n} golden pairs, {} diffs {diffs:?}", diffs.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, &str, u64); 7] = [
        (1, "ordinal", "ordinal suite", 5),
        (2, "order", "order suite", 10),
        (3, "exp", "exponential suite", 30),
        (4, "condense", "condensation suite", 10),
        (5, "cyclic", "cyclic suite", 30),
        (
            6,
            "mainthm",
            "exponentiation of discrete unbounded orders",
            120,
        ),
        (7, "backforth", "back and forth", 5),
    ];
    let mut all = true;
    let mut first_runs = Vec::new();
    for (k, name, label, limit) in criteria {
        let r = suite(name);
        let (ok, text) = summary(&r);
        let in_time = r.elapsed < Duration::from_secs(limit);
        let ok = ok && in_time;
        all &= ok;
        println!(
            "criterion {k} [{label}]: {} ({text}; limit {limit} s)",
            if ok { "PASS" } else { "FAIL" }
        );
        first_runs.push((name, r.json));
    }

    let mut diffs = Vec::new();
    for (name, json) in &first_runs {
        if suite(name).json != *json {
            diffs.push(*name);
        }
    }
    let (golden_ok, golden_text) = golden();
    let ok = diffs.is_empty() && golden_ok;
    all &= ok;
    println!(
        "criterion 8 [determinism and golden files]: {} ({} suites rerun, byte diffs in {diffs:?}; {golden_text})",
        if ok { "PASS" } else { "FAIL" },
        first_runs.len()
    );

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
