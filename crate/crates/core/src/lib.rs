//! Permutation group toolkit for fixed-point ratios and minimal degrees.
//!
//! Points are 0-based internally and 1-based in every external format.
//! Products act left to right: `x^(gh) = (x^g)^h`.

pub mod actions;
pub mod characters;
pub mod error;
pub mod fixity;
pub mod group;
pub mod limits;
pub mod perm;
pub mod ratio;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use group::{ClassData, ConjugacyClasses, PermGroup};
pub use limits::Limits;
pub use perm::{CycleExpr, PermKey, Permutation};
pub use ratio::Ratio;

/// Serialises large integers as decimal strings.
pub(crate) fn serde_u128<S: serde::Serializer>(v: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
