//! The set of intersection densities of all bundled transitive groups of a
//! given degree.

use permdensity::classify::{load_catalog, spectrum};
use permdensity::density::RhoOptions;

fn main() -> permdensity::error::Result<()> {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/catalogs");
    for n in [4, 6, 8, 9, 10] {
        let entries = load_catalog(format!("{root}/deg{n}"), 1_000_000)?;
        let s = spectrum(&entries, n, &RhoOptions::default())?;
        let values: Vec<String> = s.values().iter().map(|v| v.to_string()).collect();
        println!(
            "n = {n:>2}: {} groups, values {{{}}}, I(n) = {}, non-integral: {}, skipped: {}",
            s.entries.len(),
            values.join(", "),
            s.max().map_or("-".into(), |m| m.to_string()),
            s.non_integral().len(),
            s.skipped.len()
        );
    }
    Ok(())
}
