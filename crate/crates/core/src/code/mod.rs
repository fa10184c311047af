//! Binary linear and unrestricted codes.

mod linear;
mod unrestricted;

pub use linear::{Dual, LinearCode, DEFAULT_MESSAGE_CAP};
pub use unrestricted::{
    distance_enumerator, dual_distance, DistanceEnumerator, DualDistance, UnrestrictedCode,
    MAX_INVARIANT_SIZE, MAX_PAIRWISE_SIZE,
};
