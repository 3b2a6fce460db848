//! Wreath products in imprimitive and product action.
//!
//!     cargo run --example wreath_products

use mindeg::actions::{wreath_imprimitive, wreath_product_action};
use mindeg::fixity::fixity_profile;
use mindeg::structure::{is_primitive, ons_type};
use mindeg::{PermGroup, Result};

fn main() -> Result<()> {
    let t = PermGroup::symmetric(3);
    let imp = wreath_imprimitive(&t, 2)?;
    println!("S3 wr S2 imprimitive: degree {}, order {}, primitive {}", imp.degree(), imp.order(), is_primitive(&imp)?);

    let a5 = PermGroup::alternating(5);
    let pa = wreath_product_action(&a5, 2)?;
    let prof = fixity_profile(&pa)?;
    println!(
        "A5 wr S2 product action: degree {}, order {}, type {:?}, mindeg {}",
        pa.degree(),
        pa.order(),
        ons_type(&pa)?.tag,
        prof.mindeg
    );
    Ok(())
}
