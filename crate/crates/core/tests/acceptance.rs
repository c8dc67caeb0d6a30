//! Acceptance criteria A1 to A9. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;

use kolakoski_bounds::verify::{run_criterion, Faults, Level, CRITERIA};

fn main() -> ExitCode {
    let faults = Faults::none();
    let mut failed = Vec::new();
    for id in CRITERIA {
        let outcome = run_criterion(id, Level::Full, &faults);
        let over_time = if outcome.elapsed > outcome.limit { " [over time limit]" } else { "" };
        println!("{}{over_time}", outcome.line());
        if !outcome.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}
