//! Structural case analysis of groups of degree 2p, checked against the
//! exact density.

use permdensity::classify::classify_2p;
use permdensity::constructions::{a4_pairs, a5_pairs, cyclic, s4_pairs, thm16i_group, CodeSpec};
use permdensity::density::{rho, RhoOptions};

fn main() -> permdensity::error::Result<()> {
    let groups = vec![
        a4_pairs(),
        s4_pairs(),
        a5_pairs(),
        cyclic(14)?,
        thm16i_group(&CodeSpec::full_even_weight(5)?)?,
        thm16i_group(&CodeSpec::new(7, &["1110100"])?)?,
    ];
    for g in &groups {
        let c = classify_2p(g)?;
        let r = rho(g, &RhoOptions::default())?;
        println!(
            "{:<34} {:?}  predicted {}  exact {}",
            g.display_name(),
            c.case,
            c.predicted_rho,
            r.rho
        );
    }
    Ok(())
}
