//! Fixed points, fixed-point ratios and the minimal degree of an action.
//!
//!     cargo run --example fixity_profile -- "M22.2"

use mindeg::actions::resolve;
use mindeg::fixity::{fixity_profile, fpr_direct};
use mindeg::Result;

fn main() -> Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "M22.2".into());
    let g = resolve(&name, &[])?;
    let prof = fixity_profile(&g)?;
    println!("{name} on {} points", prof.degree);
    for c in &prof.classes {
        println!("  class {:>2}  order {:>2}  fix {:>3}  fpr {:<6} {}", c.class, c.element_order, c.fix_count, c.fpr.to_string(), c.rep);
    }
    println!("mindeg {}, fixity {}, max fpr {}", prof.mindeg, prof.fixity, prof.max_fpr);
    println!("3·mindeg ≥ 2·degree: {}", prof.meets_two_thirds());
    if let Some(a) = prof.argmax_class {
        let classes = g.conjugacy_classes()?;
        let rep = &classes.get(a).rep;
        println!("checked directly on {rep}: {}", fpr_direct(&g, rep)?);
    }
    Ok(())
}
