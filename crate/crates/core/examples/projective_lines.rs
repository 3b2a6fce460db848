//! PSL, PGL and PΓL in 2 dimensions acting on the projective line.
//!
//!     cargo run --example projective_lines -- 8

use mindeg::actions::{mobius_action, mobius_order, MobiusFlavor, SUPPORTED_Q};
use mindeg::fixity::fixity_profile;
use mindeg::structure::is_primitive;
use mindeg::Result;

fn main() -> Result<()> {
    let q: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    println!("supported field orders: {SUPPORTED_Q:?}");
    for flavor in [MobiusFlavor::PSL, MobiusFlavor::PGL, MobiusFlavor::PGammaL] {
        let g = mobius_action(q, flavor)?;
        assert_eq!(g.order(), mobius_order(q, flavor));
        let prof = fixity_profile(&g)?;
        println!(
            "{flavor:?}(2,{q}): degree {}, order {}, primitive {}, max fpr {}",
            g.degree(),
            g.order(),
            is_primitive(&g)?,
            prof.max_fpr
        );
    }
    Ok(())
}
