//! Fixed-point ratios can only grow on passing to blocks, and fixed points
//! live in fixed blocks.
//!
//!     cargo run --example monotonicity -- "Wr(Sym(3),2)"

use mindeg::actions::resolve;
use mindeg::fixity::{check_block_monotonicity, fix_decomposition};
use mindeg::structure::all_block_systems;
use mindeg::Result;

fn main() -> Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "Wr(Sym(3),2)".into());
    let g = resolve(&name, &[])?;
    let classes = g.conjugacy_classes()?;
    for sys in all_block_systems(&g)?.iter().filter(|s| !s.is_trivial()) {
        let r = check_block_monotonicity(&g, sys)?;
        println!("{} blocks of size {}: {} violations", sys.block_count(), sys.block_size(), r.violations);
        for row in &r.rows {
            let d = fix_decomposition(&g, sys, &classes.get(row.class).rep)?;
            println!(
                "  class {:>2}: {} ≤ {}   fixed blocks {} moved inside / {} pointwise, {} fixed points",
                row.class,
                row.fpr_points,
                row.fpr_blocks,
                d.sigma1.len(),
                d.sigma2.len(),
                d.total
            );
        }
    }
    Ok(())
}
