//! Runs every property suite on a small grid and prints a summary line each.

use gf2k_roots::verify::{run_all, VerifyConfig};

fn main() {
    let cfg = VerifyConfig {
        k_range: 2..=8,
        q_max_k: 4,
        ..VerifyConfig::default()
    };
    let report = run_all(&cfg);
    for s in &report.suites {
        println!(
            "{:>2} {:<20} {:<5} {}{} checks",
            s.id,
            s.name,
            if s.passed { "ok" } else { "FAIL" },
            if s.report_only { "(report only) " } else { "" },
            s.checked
        );
    }
    println!("overall: {}", if report.passed { "pass" } else { "fail" });
}
