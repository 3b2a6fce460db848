//! Character tables: exact values, indicators, involutions and the
//! permutation character of the natural action.
//!
//!     cargo run --example character_table -- "PSL(2,7)"

use mindeg::actions::resolve;
use mindeg::characters::{character_table, fs_indicators, involution_count, ls_fpr_bound, natural_permutation_character};
use mindeg::Result;

fn main() -> Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "PSL(2,7)".into());
    let g = resolve(&name, &[])?;
    let tbl = character_table(&g)?;
    tbl.validate()?;
    print!("{}", tbl.to_text());
    let nu = fs_indicators(&tbl)?;
    println!("involutions: {}", involution_count(&tbl, &nu));
    let pi = natural_permutation_character(&tbl)?;
    println!("permutation character values {:?}", pi.values);
    println!("multiplicities {:?}", pi.multiplicities);
    for i in 1..tbl.len() {
        println!("class {i}: character bound on fpr {:.4}", ls_fpr_bound(&tbl, i));
    }
    Ok(())
}
