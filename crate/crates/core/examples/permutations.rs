//! Cycle notation in and out, products, powers and cycle types.
//!
//!     cargo run --example permutations -- "(1,2,3)(4,5)" "(1,4)"

use mindeg::{Permutation, Result};

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, b) = match args.as_slice() {
        [a, b, ..] => (a.clone(), b.clone()),
        _ => ("(1,2,3)(4,5)".to_string(), "(1,4)".to_string()),
    };
    let n = 1 + [&a, &b]
        .iter()
        .flat_map(|s| s.split(|c: char| !c.is_ascii_digit()))
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(1)
        - 1;
    let x = Permutation::parse_cycles(&a, n)?;
    let y = Permutation::parse_cycles(&b, n)?;
    let xy = x.compose(&y)?;
    println!("x        = {x}   order {} cycle type {:?}", x.order(), x.cycle_type());
    println!("y        = {y}");
    // Left to right: first x, then y.
    println!("x·y      = {xy}");
    println!("y·x      = {}", y.compose(&x)?);
    println!("x^-1     = {}", x.inverse());
    println!("x^y      = {}", x.conjugate_by(&y));
    println!("x^2      = {}", x.pow(2));
    println!("fix(x·y) = {} of {n}, even: {}", xy.fix_count(), xy.is_even());
    Ok(())
}
