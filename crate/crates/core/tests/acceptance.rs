//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::ExitCode;

use novfiber::selftest;

fn main() -> ExitCode {
    let results = selftest::run_all(20240501);
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: {} of {} criteria passed", results.len(), results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
