//! Descending through block systems, pruning classes whose fixed-point
//! ratio is at most a threshold.
//!
//!     cargo run --example descent -- "Cosets(Sym(6),sylow2)" 1/3

use mindeg::actions::resolve;
use mindeg::verify::descent;
use mindeg::{Ratio, Result};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "Cosets(Sym(6),sylow2)".into());
    let threshold: Ratio = args.next().unwrap_or_else(|| "1/3".into()).parse()?;
    let g = resolve(&name, &[])?;
    let d = descent(&g, 0, threshold)?;
    for l in &d.levels {
        println!(
            "depth {} {:>4} blocks  max fpr {:<6} live {:?}",
            l.depth,
            l.blocks,
            l.max_fpr.to_string(),
            l.surviving_classes
        );
    }
    println!("survivors on the points: {:?}", d.survivors);
    println!("{} pruned pairs rechecked, all held: {}", d.rechecked, d.recheck_ok);
    Ok(())
}
