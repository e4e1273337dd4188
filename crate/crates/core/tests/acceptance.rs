//! Runs every acceptance criterion at full size and prints one line each.

use std::process::ExitCode;
use std::time::Instant;

use superfunc::checks::{run_criterion, Bounds};

fn main() -> ExitCode {
    let bounds = Bounds::default();
    let mut failed = 0;
    for number in 1..=12 {
        let start = Instant::now();
        let criterion = run_criterion(number, &bounds);
        println!("{criterion}  ({:.1}s)", start.elapsed().as_secs_f64());
        if !criterion.passed() {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 12 criteria failed");
        ExitCode::FAILURE
    }
}
