//! Reading a group catalog and resolving group expressions.
//!
//!     cargo run --example catalog -- my_groups.toml

use mindeg::actions::{bundled_catalog, load_catalog, realize, resolve};
use mindeg::Result;

fn main() -> Result<()> {
    let catalog = match std::env::args().nth(1) {
        Some(path) => load_catalog(path)?,
        None => bundled_catalog(),
    };
    for e in &catalog {
        let g = realize(e)?;
        println!("{:<24} degree {:>4}  order {:>12}  actions {:?}", e.name, g.degree(), g.order(), e.actions);
    }
    // Expressions compose the built-in constructions.
    for expr in ["Sym(6)", "Wr(Alt(4),2)", "Cosets(Sym(5),sylow2)", "PGL(2,9)"] {
        println!("{expr} has order {}", resolve(expr, &catalog)?.order());
    }
    Ok(())
}
