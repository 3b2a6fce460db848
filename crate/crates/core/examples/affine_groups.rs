//! Affine groups V:Q acting on a vector space over a prime field.
//!
//!     cargo run --example affine_groups

use mindeg::actions::{fixed_vectors, holomorph_affine, linear_map};
use mindeg::fixity::fixity_profile;
use mindeg::structure::ons_type;
use mindeg::Result;

fn main() -> Result<()> {
    // 3^2 : Q8, with Q8 generated by two matrices over F_3.
    let i = linear_map(3, 2, &[vec![0, 2], vec![1, 0]])?;
    let j = linear_map(3, 2, &[vec![1, 1], vec![1, 2]])?;
    let g = holomorph_affine(3, 2, &[i.clone(), j])?;
    println!("3^2:Q8 on 9 points: order {}, type {:?}", g.order(), ons_type(&g)?.tag);
    println!("vectors fixed by the first generator of Q8: {}", fixed_vectors(&i));
    let prof = fixity_profile(&g)?;
    for c in &prof.classes {
        println!("  order {:>2}  size {:>2}  fix {}", c.element_order, c.size, c.fix_count);
    }
    println!("mindeg {} of {}", prof.mindeg, prof.degree);
    Ok(())
}
