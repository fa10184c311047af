//! Vectorial Boolean permutations, their Walsh spectra, correlation-immune
//! tuples, the masking codes built from them, and leakage convolutions.

mod leakage;
mod masking;
mod perm;
mod walsh;

pub use leakage::{
    convolve_all, group_convolution, leakage_constancy_check, ConstancyReport, LeakageFunction,
    MAX_BRUTE_FORCE_BITS, MAX_LEAKAGE_BITS,
};
pub use masking::{
    build_masking_code, derive_bijections, derive_bijections_with_partition, verify_pair_duality,
    verify_tuple_duality, DerivedBijections, DualityReport, MAX_DUALITY_BITS, MAX_MASKING_BITS,
};
pub use perm::{BooleanPermutation, MAX_PERMUTATION_BITS};
pub use walsh::{
    cip_strength, t_ci_strength, walsh_table, Strength, WalshTable, MAX_CIP_BITS, MAX_TCI_BITS,
    MAX_TCI_FUNCTIONS, MAX_WALSH_BITS,
};
