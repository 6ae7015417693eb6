//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;

use triperm_core::funcspace::SpaceOptions;
use triperm_core::verify::criteria;

fn main() -> ExitCode {
    let checks = criteria(&SpaceOptions::default(), 2024);
    assert_eq!(checks.len(), 11);
    let mut failed = 0;
    for c in &checks {
        println!("{}", c.line());
        if !c.passed {
            println!("  {}", serde_json::to_string(&c.detail).unwrap());
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
