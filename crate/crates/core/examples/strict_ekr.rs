//! EKR versus strict-EKR: maximum intersecting sets that are not cosets of
//! a point stabilizer.

use permdensity::constructions::{alternating, cyclic, dihedral, s4_pairs};
use permdensity::density::{rho, RhoOptions};

fn main() -> permdensity::error::Result<()> {
    let opts = RhoOptions {
        strict: true,
        ..RhoOptions::default()
    };
    for g in [s4_pairs(), alternating(4)?, dihedral(5)?, cyclic(6)?] {
        let r = rho(&g, &opts)?;
        println!(
            "{:<14} ekr={} strict={}",
            r.name,
            r.is_ekr,
            r.is_strict_ekr.expect("requested")
        );
        if let Some(w) = &r.non_canonical_witness {
            let w: Vec<String> = w.iter().map(|p| p.to_cycle_string()).collect();
            println!("    non-canonical maximum set: {}", w.join(" "));
        }
    }
    Ok(())
}
