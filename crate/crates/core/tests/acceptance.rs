//! The twelve acceptance criteria, one pass/fail line each.

use necklace_core::report::Status;
use necklace_core::suites::{criterion, run_suite, Suite, SuiteOptions, CRITERIA};
use std::time::{Duration, Instant};

/// Wall-clock limits that are part of a criterion.
fn limit(n: usize) -> Option<Duration> {
    match n {
        1 => Some(Duration::from_secs(60)),
        4 => Some(Duration::from_secs(5)),
        9 => Some(Duration::from_secs(30)),
        _ => None,
    }
}

fn acceptance_criteria() -> bool {
    let opts = SuiteOptions::default();
    let mut failed = Vec::new();
    for (i, title) in CRITERIA.iter().enumerate() {
        let n = i + 1;
        let start = Instant::now();
        let checks = criterion(n, &opts);
        let elapsed = start.elapsed();
        let bad: Vec<_> = checks.iter().filter(|c| c.status != Status::Pass).collect();
        let in_time = limit(n).map_or(true, |l| elapsed <= l);
        let ok = bad.is_empty() && in_time && !checks.is_empty();
        println!(
            "criterion {n:>2} {}: {title} ({} checks, {:.2?}{})",
            if ok { "PASS" } else { "FAIL" },
            checks.len(),
            elapsed,
            limit(n).map_or(String::new(), |l| format!(", limit {l:?}")),
        );
        for c in bad {
            println!("    {} {:?}: {}", c.name, c.status, c.witness.as_deref().unwrap_or(""));
        }
        if !ok {
            failed.push(n);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
    }
    failed.is_empty()
}

/// The release gate of criterion 12: the whole battery within ten minutes.
fn full_verification_battery() -> bool {
    let start = Instant::now();
    let checks = run_suite(Suite::All, &SuiteOptions::default());
    let elapsed = start.elapsed();
    let bad: Vec<_> = checks.iter().filter(|c| !c.passed()).map(|c| c.name.clone()).collect();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(600);
    println!("verify --suite all {}: {} checks in {elapsed:.2?}", if ok { "PASS" } else { "FAIL" }, checks.len());
    for name in &bad {
        println!("    {name}");
    }
    ok
}

fn main() {
    let criteria = acceptance_criteria();
    let battery = full_verification_battery();
    if !(criteria && battery) {
        std::process::exit(1);
    }
}
