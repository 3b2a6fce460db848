//! Orbits, block systems, normal structure and the quasiprimitive types.

mod blocks;
mod normal;

pub use blocks::{
    all_block_systems, block_action, block_closure, is_primitive, maximal_block_systems,
    minimal_block_systems, orbits, quotient_action, setwise_stabilizer, BlockSystem,
};
pub use normal::{
    core, core_with, is_quasiprimitive, is_quasiprimitive_on_cosets, minimal_normal_subgroups,
    minimal_normal_subgroups_with, normal_closure, o2, o2_with, ons_type, ons_type_on_cosets,
    socle, sylow2, sylow2_overgroup_blocks, sylow2_overgroup_blocks_with, sylow2_with,
    transitive_on_cosets, two_part, OnsTag, OnsType, SylowBlocks, DEFAULT_SEED,
};
