//! Runs every verification suite over one bundled catalog directory.
//!
//! `cargo run --release --example verify_catalog -- crates/core/catalogs/deg6`

use permdensity::classify::{load_catalog, run_suite, Suite, SuiteOptions, Verdict};

fn main() -> permdensity::error::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/catalogs/deg6").into());
    let entries = load_catalog(&dir, 1_000_000)?;
    let options = SuiteOptions {
        workers: 4,
        ..SuiteOptions::default()
    };
    for suite in Suite::ALL {
        let report = run_suite(suite, &entries, &options);
        println!(
            "{:<22} pass {:>3} fail {:>2} skip {:>3} error {:>2}",
            suite.name(),
            report.passed,
            report.failed,
            report.skipped,
            report.errors
        );
        for r in report.results.iter().filter(|r| r.verdict == Verdict::Fail) {
            println!("    FAIL {}: {}", r.group, r.evidence.join("; "));
        }
    }
    Ok(())
}
