use std::process::ExitCode;
use std::time::Instant;

use wittlab::verify::{run_criterion, VerifyConfig};

const NAMES: [&str; 11] = [
    "ghost homomorphism",
    "universal polynomial golden files",
    "W_n(F_p) = Z/p^n",
    "V/R sequence and F_p identities",
    "big Witt vectors",
    "Tate/Q suite",
    "non-commutative polynomials",
    "W_nHH_0 commutative oracle",
    "W_nHH_0 exact sequence",
    "cyclic identities and etale HKR",
    "FBV = B (stretch)",
];

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut blocking_failures = 0;
    for k in 1..=11u8 {
        let start = Instant::now();
        let checks = run_criterion(k, &cfg);
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        let blocking = checks.iter().all(|c| c.blocking);
        let status = if failed.is_empty() { "PASS" } else if blocking { "FAIL" } else { "FAIL (non-blocking)" };
        println!(
            "criterion {k:>2} [{status}] {} — {}/{} checks, {:.2?}",
            NAMES[k as usize - 1],
            checks.len() - failed.len(),
            checks.len(),
            start.elapsed()
        );
        for c in &failed {
            println!("    {}: {}", c.name, c.detail);
        }
        if k == 11 {
            for c in &checks {
                println!("    {}", c.detail);
            }
        }
        if !failed.is_empty() && blocking {
            blocking_failures += 1;
        }
    }
    if blocking_failures == 0 {
        println!("acceptance: all blocking criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {blocking_failures} blocking criteria failed");
        ExitCode::FAILURE
    }
}
