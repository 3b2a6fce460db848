//! Orbits and the lattice of block systems of a transitive group.
//!
//!     cargo run --example block_systems -- "Wr(Sym(2),3)"

use mindeg::actions::resolve;
use mindeg::structure::{all_block_systems, is_primitive, maximal_block_systems, minimal_block_systems, orbits};
use mindeg::Result;

fn main() -> Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "Wr(Sym(2),3)".into());
    let g = resolve(&name, &[])?;
    println!("{name}: degree {}, order {}", g.degree(), g.order());
    println!("orbits: {}", orbits(&g).len());
    if !g.is_transitive() {
        return Ok(());
    }
    println!("primitive: {}", is_primitive(&g)?);
    for sys in all_block_systems(&g)? {
        println!("  {} blocks of size {}: {}", sys.block_count(), sys.block_size(), sys.fingerprint());
    }
    println!("minimal: {}", minimal_block_systems(&g)?.len());
    println!("maximal: {}", maximal_block_systems(&g)?.len());
    Ok(())
}
