//! Orders, membership and stabilisers from a base and strong generating set.
//!
//!     cargo run --example schreier_sims -- "M11"

use mindeg::actions::resolve;
use mindeg::{Permutation, Result};

fn main() -> Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "M11".into());
    let g = resolve(&name, &[])?;
    println!("{name}: degree {}, order {}", g.degree(), g.order());
    println!("base {:?}", g.base().iter().map(|b| b + 1).collect::<Vec<_>>());
    println!("transitive {}, abelian {}", g.is_transitive(), g.is_abelian());

    let stab = g.stabilizer(0);
    println!("stabiliser of 1: order {}, orbit of 1 has length {}", stab.order(), g.orbit(0).len());

    let mut rng = rand::thread_rng();
    let x = g.random_element(&mut rng);
    println!("random element {x} is a member: {}", g.contains(&x)?);
    let t = Permutation::parse_cycles("(1,2)", g.degree())?;
    println!("(1,2) is a member: {}", g.contains(&t)?);
    Ok(())
}
