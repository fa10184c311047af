use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::binomial;
use rayon::prelude::*;

use super::Effort;
use crate::code::LinearCode;
use crate::gf2::{BitMatrix, BitVector};
use crate::partition::exhaustive_partition_oracle;
use crate::{Error, Result};

/// Classes of `k × k(t−1)` concatenations of invertible blocks, up to row and
/// column permutation.
#[derive(Debug, Clone)]
pub struct CatEnumeration {
    pub k: usize,
    pub t: usize,
    /// One matrix per class, laid out as `t − 1` invertible blocks.
    pub representatives: Vec<BitMatrix>,
}

impl CatEnumeration {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// A class is a multiset of `k(t−1)` nonzero columns that splits into `t − 1`
/// bases, taken up to a permutation of the rows (bit positions). Each multiset
/// is visited once in sorted order and kept when it is the smallest sorted
/// image under all row permutations.
pub fn enumerate_cat(k: usize, t: usize, effort: Effort) -> Result<CatEnumeration> {
    if k == 0 || t < 2 {
        return Err(Error::Precondition(format!(
            "need k >= 1 and t >= 2, got k = {k}, t = {t}"
        )));
    }
    let blocks = t - 1;
    let size = blocks * k;
    if k > 6 || size > crate::partition::ORACLE_MAX_LENGTH {
        return Err(Error::Infeasible(format!(
            "Cat for k = {k}, t = {t} is out of range"
        )));
    }
    let values = (1usize << k) - 1;
    let multisets = binomial(BigUint::from(values + size - 1), BigUint::from(size));
    if multisets > BigUint::from(effort.multiset_limit()) {
        return Err(Error::Infeasible(format!(
            "{multisets} column multisets for k = {k}, t = {t}; raise the effort level"
        )));
    }

    let row_perms: Vec<Vec<usize>> = (0..k)
        .permutations(k)
        .map(|p| {
            (0..1usize << k)
                .map(|v| (0..k).filter(|&i| v >> i & 1 == 1).map(|i| 1 << p[i]).sum())
                .collect()
        })
        .collect();

    let mut reps: Vec<Vec<usize>> = (1..=values)
        .combinations_with_replacement(size)
        .par_bridge()
        .filter(|cols| is_row_perm_minimal(cols, &row_perms))
        .filter_map(|cols| block_layout(k, blocks, &cols))
        .collect();
    reps.sort();

    let representatives = reps
        .into_iter()
        .map(|cols| {
            BitMatrix::from_columns(
                &cols
                    .iter()
                    .map(|&v| BitVector::from_u64(k, v as u64))
                    .collect::<Vec<_>>(),
            )
        })
        .collect::<Result<_>>()?;
    Ok(CatEnumeration {
        k,
        t,
        representatives,
    })
}

fn is_row_perm_minimal(cols: &[usize], row_perms: &[Vec<usize>]) -> bool {
    let mut image = vec![0usize; cols.len()];
    row_perms.iter().all(|p| {
        for (dst, &v) in image.iter_mut().zip(cols) {
            *dst = p[v];
        }
        image.sort_unstable();
        image.as_slice() >= cols
    })
}

/// Columns reordered into `blocks` consecutive bases, or `None` when the
/// multiset has no such split.
fn block_layout(k: usize, blocks: usize, cols: &[usize]) -> Option<Vec<usize>> {
    let m = BitMatrix::from_columns(
        &cols
            .iter()
            .map(|&v| BitVector::from_u64(k, v as u64))
            .collect::<Vec<_>>(),
    )
    .ok()?;
    let code = LinearCode::new(m).ok()?;
    let sets = exhaustive_partition_oracle(&code, blocks).ok()??;
    Some(sets.iter().flatten().map(|&j| cols[j]).collect())
}
