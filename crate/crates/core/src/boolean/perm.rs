use std::fmt;

use crate::gf2::{apply_row_map, BitMatrix};
use crate::{Error, Result};

/// Largest input size accepted for a permutation table.
pub const MAX_PERMUTATION_BITS: usize = 20;

/// A permutation of `F_2^k` stored as a lookup table. Input and output
/// vectors are packed as integers with bit `i` holding coordinate `i`.
///
/// Linear permutations keep their matrix `M` (the map is `x ↦ x·M`). A table
/// that happens to be linear is detected on construction.
#[derive(Clone, PartialEq, Eq)]
pub struct BooleanPermutation {
    k: usize,
    table: Vec<u32>,
    linear: Option<BitMatrix>,
}

impl BooleanPermutation {
    pub fn new(k: usize, table: Vec<u32>) -> Result<Self> {
        check_bits(k)?;
        if table.len() != 1 << k {
            return Err(Error::Dimension(format!(
                "a permutation of F_2^{k} needs {} values, got {}",
                1usize << k,
                table.len()
            )));
        }
        let mut seen = vec![false; 1 << k];
        for (x, &y) in table.iter().enumerate() {
            let Some(slot) = seen.get_mut(y as usize) else {
                return Err(Error::Range(format!(
                    "value {y} at index {x} is out of range"
                )));
            };
            if std::mem::replace(slot, true) {
                return Err(Error::Precondition(format!("value {y} appears twice")));
            }
        }
        let linear = detect_linear(k, &table);
        Ok(BooleanPermutation { k, table, linear })
    }

    pub fn identity(k: usize) -> Result<Self> {
        check_bits(k)?;
        Ok(BooleanPermutation {
            k,
            table: (0..1u32 << k).collect(),
            linear: Some(BitMatrix::identity(k)),
        })
    }

    /// The linear map `x ↦ x·m` for an invertible square `m`.
    pub fn from_matrix(m: &BitMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "a {}x{} matrix is not square",
                m.nrows(),
                m.ncols()
            )));
        }
        let k = m.nrows();
        check_bits(k)?;
        if !m.is_invertible() {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        let rows: Vec<u64> = (0..k).map(|i| m.row_u64(i)).collect();
        let table = (0..1u64 << k)
            .map(|x| apply_row_map(&rows, x) as u32)
            .collect();
        Ok(BooleanPermutation {
            k,
            table,
            linear: Some(m.clone()),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    /// Matrix `M` with `F(x) = x·M`, when `F` is linear.
    pub fn matrix(&self) -> Option<&BitMatrix> {
        self.linear.as_ref()
    }

    pub fn is_linear(&self) -> bool {
        self.linear.is_some()
    }

    pub fn inverse(&self) -> BooleanPermutation {
        let mut inv = vec![0u32; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        BooleanPermutation {
            k: self.k,
            table: inv,
            linear: self.linear.as_ref().map(|m| {
                m.invert()
                    .ok()
                    .flatten()
                    .expect("linear permutation is invertible")
            }),
        }
    }

    /// `self ∘ inner`, i.e. `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &BooleanPermutation) -> Result<BooleanPermutation> {
        if self.k != inner.k {
            return Err(Error::Dimension(format!(
                "k = {} vs k = {}",
                self.k, inner.k
            )));
        }
        let table = inner
            .table
            .iter()
            .map(|&y| self.table[y as usize])
            .collect();
        BooleanPermutation::new(self.k, table)
    }
}

fn check_bits(k: usize) -> Result<()> {
    if k == 0 || k > MAX_PERMUTATION_BITS {
        return Err(Error::Range(format!(
            "permutation size k = {k} outside 1..={MAX_PERMUTATION_BITS}"
        )));
    }
    Ok(())
}

fn detect_linear(k: usize, table: &[u32]) -> Option<BitMatrix> {
    if table[0] != 0 {
        return None;
    }
    let rows: Vec<u64> = (0..k).map(|i| table[1 << i] as u64).collect();
    let linear = (0..table.len()).all(|x| apply_row_map(&rows, x as u64) == table[x] as u64);
    linear.then(|| BitMatrix::from_u64_rows(k, &rows))
}

impl fmt::Debug for BooleanPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanPermutation(k={}", self.k)?;
        if self.linear.is_some() {
            f.write_str(", linear")?;
        }
        if self.k <= 4 {
            write!(f, ", {:?}", self.table)?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(BooleanPermutation::new(2, vec![0, 1, 2, 2]).is_err());
        assert!(BooleanPermutation::new(2, vec![0, 1, 2, 4]).is_err());
        assert!(BooleanPermutation::new(2, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let m = BitMatrix::from_strs(&["110", "010", "011"]).unwrap();
        let f = BooleanPermutation::from_matrix(&m).unwrap();
        // e_0 = 1 maps to row 0 = 110, packed as bits 0 and 1
        assert_eq!(f.apply(1), 0b011);
        let g = BooleanPermutation::new(3, f.table().to_vec()).unwrap();
        assert_eq!(g.matrix(), Some(&m));
        let id = f.compose(&f.inverse()).unwrap();
        assert_eq!(id, BooleanPermutation::identity(3).unwrap());
    }

    #[test]
    fn nonlinear_is_detected() {
        let f = BooleanPermutation::new(2, vec![0, 1, 3, 2]).unwrap();
        assert!(f.is_linear());
        let f = BooleanPermutation::new(2, vec![1, 0, 2, 3]).unwrap();
        assert!(!f.is_linear());
    }
}
