//! The action of a group on the right cosets of a subgroup.
//!
//!     cargo run --example coset_action -- "Sym(5)" "(1,2)(3,4);(1,3)(2,4)"

use mindeg::actions::{coset_action, resolve};
use mindeg::{Permutation, Result};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "Sym(5)".into());
    let gens = args.next().unwrap_or_else(|| "(1,2)(3,4);(1,3)(2,4)".into());
    let g = resolve(&name, &[])?;
    let h_gens = gens
        .split(';')
        .map(|s| Permutation::parse_cycles(s, g.degree()))
        .collect::<Result<Vec<_>>>()?;
    let h = g.subgroup(h_gens)?;
    let act = coset_action(&g, &h)?;
    println!("{name} on the {} cosets of a subgroup of order {}", act.degree(), h.order());
    println!("image order {}, kernel order {}, faithful {}", act.image.order(), act.kernel.order(), act.is_faithful());
    for s in g.generators() {
        println!("  {s}  ->  {}", act.image_of(s)?);
    }
    Ok(())
}
