//! Sylow 2-subgroups, O2, the socle and the quasiprimitive type.
//!
//!     cargo run --example normal_structure -- "PWr(Sym(3),2)"

use mindeg::actions::resolve;
use mindeg::structure::{is_quasiprimitive, minimal_normal_subgroups, o2, ons_type, socle, sylow2};
use mindeg::Result;

fn main() -> Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "PWr(Sym(3),2)".into());
    let g = resolve(&name, &[])?;
    println!("{name}: degree {}, order {}", g.degree(), g.order());
    println!("Sylow 2-subgroup order {}", sylow2(&g)?.order());
    println!("O2 order {}", o2(&g)?.order());
    for n in minimal_normal_subgroups(&g)? {
        println!("minimal normal subgroup of order {}, transitive {}", n.order(), n.is_transitive());
    }
    println!("socle order {}", socle(&g)?.order());
    if g.is_transitive() && is_quasiprimitive(&g)? {
        let t = ons_type(&g)?;
        println!("quasiprimitive of type {:?} ({} factors, socle order {})", t.tag, t.socle_factor_count, t.socle_order);
    } else {
        println!("not quasiprimitive");
    }
    Ok(())
}
