//! Intersection density of A4, S4, A5 and S5 acting on 2-subsets.
//!
//! `cargo run --release --example rho_of_pairs`

use permdensity::constructions::{a4_pairs, a5_pairs, s4_pairs, s5_pairs};
use permdensity::density::{rho, RhoOptions};

fn main() -> permdensity::error::Result<()> {
    for g in [a4_pairs(), s4_pairs(), a5_pairs(), s5_pairs()] {
        let r = rho(&g, &RhoOptions::default())?;
        println!(
            "{:<22} order {:>3}  |G_v| = {:>2}  alpha = {:>2}  rho = {}",
            r.name, r.order, r.stabilizer_order, r.alpha, r.rho
        );
        for m in &r.method {
            println!("    {m}");
        }
    }

    // force_exact skips every shortcut and runs the clique search
    let exact = RhoOptions {
        force_exact: true,
        ..RhoOptions::default()
    };
    let r = rho(&a5_pairs(), &exact)?;
    println!("\nA5 on pairs, exact search: alpha = {} after {} nodes", r.alpha, r.nodes);
    let w: Vec<String> = r.witness.iter().map(|p| p.to_cycle_string()).collect();
    println!("witness: {}", w.join(" "));
    Ok(())
}
