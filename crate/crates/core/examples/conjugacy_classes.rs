//! Conjugacy classes with sizes, centralisers and power maps.
//!
//!     cargo run --example conjugacy_classes -- "PSL(2,7)"

use mindeg::actions::resolve;
use mindeg::Result;

fn main() -> Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "PSL(2,7)".into());
    let g = resolve(&name, &[])?;
    let classes = g.conjugacy_classes()?;
    let squares = classes.power_map(2);
    println!("{name}: order {}, {} classes, exponent {}", g.order(), classes.len(), classes.exponent());
    println!("{:>5} {:>6} {:>8} {:>10} {:>4}  rep", "class", "order", "size", "|C(x)|", "x^2");
    for (i, c) in classes.iter().enumerate() {
        println!(
            "{:>5} {:>6} {:>8} {:>10} {:>4}  {}",
            i, c.element_order, c.size, c.centralizer_order, squares[i], c.rep
        );
    }
    Ok(())
}
