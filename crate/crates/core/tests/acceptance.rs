//! Runs every acceptance criterion at full size with the default seed and
//! prints one tab-separated line per criterion, then the pass count.

use std::process::ExitCode;

use topomodal::suite::{run_all_concurrent, summary, SuiteConfig};

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let reports = run_all_concurrent(&cfg);
    for r in &reports {
        println!("{}", r.tsv());
    }
    println!("{}", summary(&reports));
    if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
