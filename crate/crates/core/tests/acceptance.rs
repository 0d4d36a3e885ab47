//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use mobius_lab::acceptance::{run_all, Context};

fn main() -> ExitCode {
    let start = Instant::now();
    let ctx = match Context::new() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("could not build the sieve table: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!("sieve table ready in {:.2} s", start.elapsed().as_secs_f64());
    let outcomes = run_all(&ctx);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
