//! Classification of t-CIS codes up to coordinate permutation.

mod canon;
mod cat;
mod methods;

pub use canon::{canonical_form, equivalent, CanonicalCode, MAX_CANON_DIM};
pub use cat::{enumerate_cat, CatEnumeration};
pub use methods::{classify_tcis, ClassTableRow, Classification, ClassifiedCode, Method};

/// Guard level for the exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Effort {
    /// Finishes in seconds.
    #[default]
    Standard,
    /// Allows runs that take minutes to hours.
    Extended,
}

impl Effort {
    pub(crate) fn multiset_limit(self) -> u64 {
        match self {
            Effort::Standard => 1_000_000,
            Effort::Extended => 100_000_000,
        }
    }
}
