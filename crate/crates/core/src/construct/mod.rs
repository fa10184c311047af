//! Quasi-cyclic, building-up and subtracting constructions, the mass formula
//! check, and distance bounds.

mod bounds;
mod buildup;
mod mass;
mod qc;

pub use bounds::{binary_entropy, bounds, m_count, Bounds};
pub use buildup::{build_up, subtract, BuildUpChoice};
pub use mass::{mass_formula_check, MassClass, MassReport, MASS_ENUMERATION_LIMIT};
pub use qc::{gcds_with_x_pow_minus_one, parse_poly_token, qc_build, BitOrder, QcReport, QcSpec};
