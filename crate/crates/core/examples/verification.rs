//! Runs every verification suite at a small scale and prints a summary.

use piles::verify::{run_all, VerifyConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = VerifyConfig { seed: 11, count: 10, max_space: 4, wall_time: false, ..VerifyConfig::default() };
    for report in run_all(&cfg)? {
        println!("{:<20} {:>4} passed {:>3} failed {:>3} skipped", report.suite, report.passed, report.failed, report.skipped);
        for r in report.records.iter().filter(|r| r.status == piles::verify::Status::Fail) {
            println!("  {}: {}", r.name, r.detail.as_deref().unwrap_or(""));
        }
    }
    Ok(())
}
