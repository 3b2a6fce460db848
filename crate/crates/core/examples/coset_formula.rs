//! Fixed-point ratios on cosets, from class sizes alone: for x in G acting
//! on the cosets of H, fpr(x) = |x^G ∩ H| / |x^G|.
//!
//!     cargo run --example coset_formula -- "M22.2"

use mindeg::actions::resolve;
use mindeg::fixity::coset_fixity_profile;
use mindeg::structure::sylow2;
use mindeg::{Limits, Result};

fn main() -> Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "M22.2".into());
    let g = resolve(&name, &[])?;
    let h = sylow2(&g)?;
    // The action is never built; the degree is the index.
    let prof = coset_fixity_profile(&g, &h, &Limits::default())?;
    println!("{name} on the {} cosets of a Sylow 2-subgroup", prof.degree);
    for c in prof.classes.iter().filter(|c| c.fix_count > 0) {
        println!("  class {:>2}  order {:>2}  fix {:>6}  fpr {}", c.class, c.element_order, c.fix_count, c.fpr);
    }
    println!("mindeg {}, max fpr {} ≈ {:.5}", prof.mindeg, prof.max_fpr, prof.max_fpr.to_f64());
    Ok(())
}
