//! Runs every theorem suite on the default scan and random samples and
//! prints the summary table.

use trapcc::verify::{render_table, run_suites, Suite, VerifyConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = VerifyConfig::default();
    let reports = run_suites(&Suite::ALL, &cfg)?;
    print!("{}", render_table(&reports));
    for r in reports.iter().filter(|r| !r.passed()) {
        for f in r.failures.iter().take(3) {
            println!("{}: {} ({})", r.theorem, f.case, f.detail);
        }
    }
    let ok = reports.iter().all(|r| r.passed());
    println!("{}", if ok { "all suites pass" } else { "violations found" });
    if !ok {
        std::process::exit(1);
    }
    Ok(())
}
