use std::process::ExitCode;

use superstab::suite::{run_criterion, SuiteConfig, CRITERIA};

// SUPERSTAB_MAX_N=5 selects the extended tier.
fn main() -> ExitCode {
    let max_n = std::env::var("SUPERSTAB_MAX_N").ok().and_then(|v| v.parse().ok()).unwrap_or(4);
    let cfg = SuiteConfig { max_n, ..SuiteConfig::default() };
    println!("acceptance suite, max_n = {max_n}");
    let mut failed = 0;
    for (id, _) in CRITERIA {
        let r = run_criterion(id, &cfg);
        let tag = if r.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {:>2} {} ({:.2?}): {}", r.id, r.title, r.elapsed, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("{} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
