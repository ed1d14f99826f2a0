//! Runs every invariant suite and prints one line per check.

use wignerkit::verify::{run_suite, Suite, Tolerances};

fn main() {
    let tols = Tolerances::default();
    for suite in Suite::EACH {
        let report = run_suite(suite, &tols);
        for c in &report.checks {
            let value = c.value.map_or_else(|| "error".to_string(), |v| format!("{v:.3e}"));
            println!("{} {:<60} value={value} tol={:.1e}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.tolerance);
            if let Some(e) = &c.error {
                println!("     {e}");
            }
        }
        println!("# {suite}: {}/{} in {:.1}s", report.summary.passed, report.summary.total, report.summary.elapsed_seconds);
    }
}
