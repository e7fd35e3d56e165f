//! Builds the parametrised families and writes them as .grp files.
//!
//! `cargo run --release --example construct_families -- /tmp/groups`

use std::path::PathBuf;

use permdensity::constructions::{frobenius_lift, iterated_wreath_sylow, thm16i_group, CodeSpec};
use permdensity::group::grp::GrpFile;

fn main() -> permdensity::error::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "groups".into()));
    std::fs::create_dir_all(&dir)?;

    let code = CodeSpec::full_even_weight(5)?;
    println!("even-weight code of length 5: dimension {}", code.dimension());
    let mut groups = vec![(String::from("thm16i_5"), thm16i_group(&code)?)];
    for d in [1, 2, 4] {
        groups.push((format!("frobenius_5_{d}"), frobenius_lift(5, d, &code)?));
    }
    for (p, k) in [(2, 2), (2, 3), (3, 2)] {
        groups.push((format!("wreath_{p}_{k}"), iterated_wreath_sylow(p, k)?));
    }

    for (file, g) in &groups {
        let path = dir.join(format!("{file}.grp"));
        GrpFile::from_group(g).write(&path)?;
        println!("{:<40} degree {:>2} order {:>6} -> {}", g.display_name(), g.degree(), g.order(), path.display());
    }
    Ok(())
}
