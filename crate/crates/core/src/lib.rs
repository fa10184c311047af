//! Binary and Z4 codes whose coordinates split into disjoint information sets.
//!
//! A binary `[tk, k]` code is t-CIS when its coordinates split into `t`
//! pairwise disjoint information sets. The crate tests that property with a
//! matroid base-partition walk and turns t-CIS codes into masking bijections.
//! It also covers Z4-linear codes through the Gray map, the quasi-cyclic,
//! building-up and subtracting constructions, and the classification of short
//! 3-CIS codes up to coordinate permutation.

pub mod boolean;
pub mod classify;
pub mod code;
pub mod construct;
mod error;
pub mod gf2;
pub mod io;
pub mod partition;
pub mod z4;

pub use error::{Error, Result};
