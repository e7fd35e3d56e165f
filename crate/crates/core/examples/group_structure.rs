//! Orbits, block systems, quotients and kernels.

use permdensity::constructions::{a4_pairs, s4_pairs, thm16i_group, CodeSpec};
use permdensity::group::PermGroup;

fn describe(g: &PermGroup) -> permdensity::error::Result<()> {
    println!(
        "{} (degree {}, order {}): transitive {}, 2-transitive {}, derangements {}",
        g.display_name(),
        g.degree(),
        g.order(),
        g.is_transitive(),
        g.is_2_transitive(),
        g.derangements().len()
    );
    for system in g.all_block_systems()? {
        let q = g.quotient_action(&system)?;
        println!(
            "  {} blocks of size {}: quotient order {}, kernel order {} (even: {})",
            system.block_count(),
            system.block_size(),
            q.quotient.order(),
            q.kernel.order(),
            q.kernel.is_subgroup_alternating()
        );
    }
    let mut lengths: Vec<usize> = g.find_semiregular_elements().iter().map(|s| s.cycle_length).collect();
    lengths.sort_unstable();
    lengths.dedup();
    println!("  semiregular cycle lengths: {lengths:?}");
    Ok(())
}

fn main() -> permdensity::error::Result<()> {
    describe(&a4_pairs())?;
    describe(&s4_pairs())?;
    describe(&thm16i_group(&CodeSpec::full_even_weight(7)?)?)?;
    Ok(())
}
