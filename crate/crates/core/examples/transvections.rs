//! Transvections among upper unitriangular matrices over the field of two
//! elements, in closed form and by recursion.
//!
//!     cargo run --example transvections -- 12

use mindeg::fixity::{transvection_count, transvection_count_recursive};
use mindeg::Result;

fn main() -> Result<()> {
    let up_to: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    for n in 2..=up_to {
        let a = transvection_count(n)?;
        let b = transvection_count_recursive(n)?;
        println!("n = {n:>2}: {a:>8} {}", if a == b { "" } else { "MISMATCH" });
    }
    Ok(())
}
