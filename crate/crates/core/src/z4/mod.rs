//! Z4-linear codes, the Gray map and Lee distance.
//!
//! The Gray map sends `0, 1, 2, 3` to `00, 01, 11, 10`; symbol `i` of a Z4
//! word occupies binary coordinates `2i` and `2i + 1` of its image.

mod matrix;

pub use matrix::{z4_invert, Z4Matrix};

use std::collections::HashSet;

use crate::boolean::BooleanPermutation;
use crate::code::{LinearCode, UnrestrictedCode};
use crate::gf2::BitVector;
use crate::partition::{t_cis_partition, PartitionOutcome};
use crate::{Error, Result};

/// Largest `k` for which all `4^k` codewords are enumerated.
pub const MAX_Z4_DIMENSION: usize = 10;

const GRAY: [(bool, bool); 4] = [(false, false), (false, true), (true, true), (true, false)];

/// Gray image of one symbol as two bits, first printed bit first.
pub fn gray_symbol(s: u8) -> (bool, bool) {
    GRAY[s as usize & 3]
}

pub fn gray_inverse_symbol(bits: (bool, bool)) -> u8 {
    match bits {
        (false, false) => 0,
        (false, true) => 1,
        (true, true) => 2,
        (true, false) => 3,
    }
}

/// Componentwise Gray map `Z4^n → F_2^{2n}`.
pub fn gray_map(word: &[u8]) -> BitVector {
    let mut v = BitVector::zeros(2 * word.len());
    for (i, &s) in word.iter().enumerate() {
        let (a, b) = gray_symbol(s);
        v.set(2 * i, a);
        v.set(2 * i + 1, b);
    }
    v
}

pub fn gray_inverse(v: &BitVector) -> Result<Vec<u8>> {
    if !v.len().is_multiple_of(2) {
        return Err(Error::Dimension(format!("odd length {}", v.len())));
    }
    Ok((0..v.len() / 2)
        .map(|i| gray_inverse_symbol((v.get(2 * i), v.get(2 * i + 1))))
        .collect())
}

/// Lee weight with symbol weights 0, 1, 2, 1.
pub fn lee_weight(word: &[u8]) -> usize {
    word.iter().map(|&s| [0, 1, 2, 1][s as usize & 3]).sum()
}

/// A Z4-linear code given by a generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z4Code {
    gen: Z4Matrix,
    free: bool,
}

impl Z4Code {
    /// Any generator is accepted; the code is free (type `4^k`) exactly when
    /// the mod-2 reduction has full row rank.
    pub fn new(gen: Z4Matrix) -> Self {
        let free = gen.mod2().rank() == gen.nrows();
        Z4Code { gen, free }
    }

    pub fn generator(&self) -> &Z4Matrix {
        &self.gen
    }

    pub fn n(&self) -> usize {
        self.gen.ncols()
    }

    pub fn k(&self) -> usize {
        self.gen.nrows()
    }

    pub fn is_free(&self) -> bool {
        self.free
    }

    /// Distinct codewords; `4^k` of them for a free code.
    pub fn codewords(&self) -> Result<Vec<Vec<u8>>> {
        let k = self.k();
        if k > MAX_Z4_DIMENSION {
            return Err(Error::Infeasible(format!(
                "4^{k} codewords exceed the limit 4^{MAX_Z4_DIMENSION}"
            )));
        }
        let mut out = Vec::with_capacity(1 << (2 * k));
        let mut seen = HashSet::new();
        for m in 0..1usize << (2 * k) {
            let u: Vec<u8> = (0..k).map(|i| ((m >> (2 * i)) & 3) as u8).collect();
            let w = self.gen.left_mul_vec(&u);
            if self.free || seen.insert(w.clone()) {
                out.push(w);
            }
        }
        Ok(out)
    }
}

/// Binary image of the code under the Gray map, flagged distance invariant.
pub fn gray_image(c: &Z4Code) -> Result<UnrestrictedCode> {
    let words = c.codewords()?.iter().map(|w| gray_map(w)).collect();
    Ok(UnrestrictedCode::new(2 * c.n(), words)?.with_distance_invariance(true))
}

/// Minimum Lee weight of a nonzero codeword, computed on the Z4 words.
pub fn lee_min_distance(c: &Z4Code) -> Result<usize> {
    c.codewords()?
        .iter()
        .map(|w| lee_weight(w))
        .filter(|&w| w > 0)
        .min()
        .ok_or_else(|| Error::Degenerate("the zero code has no nonzero word".into()))
}

/// Partition of the coordinates into `t` Z4 information sets, found on the
/// mod-2 reduction: a `k x k` Z4 matrix is invertible exactly when its
/// reduction is. Every returned set is checked by inverting over Z4.
pub fn z4_t_cis_partition(c: &Z4Code, t: usize) -> Result<PartitionOutcome> {
    if !c.is_free() {
        return Err(Error::Unsupported("the code is not free".into()));
    }
    let out = t_cis_partition(&LinearCode::new(c.gen.mod2())?, t)?;
    if let PartitionOutcome::Partition(sets) = &out {
        for s in sets {
            if z4_invert(&c.gen.select_columns(s))?.is_none() {
                return Err(Error::Internal(format!(
                    "columns {s:?} invertible mod 2 but not over Z4"
                )));
            }
        }
    }
    Ok(out)
}

/// Output of [`z4_derive_bijections`].
#[derive(Clone, Debug)]
pub struct Z4Bijections {
    /// Information sets ordered by their smallest coordinate.
    pub sets: Vec<Vec<usize>>,
    /// Blocks `M_1, …, M_{t−1}` of the generator rewritten as `(I_k | M_1 | …)`.
    pub blocks: Vec<Z4Matrix>,
    /// `F_i(x) = φ(φ⁻¹(x)·(M_iᵀ)⁻¹)` on `F_2^{2k}`.
    pub bijections: Vec<BooleanPermutation>,
}

/// Nonlinear bijections of `F_2^{2k}` obtained from a free t-CIS Z4 code.
///
/// For `t = 2` the code `{(x, F(x))}` has dual distance equal to the Lee
/// distance of `c`. For `t > 2` the masking code XORs the shares while the
/// Z4 dual adds them mod 4, and the dual distance can come out smaller.
pub fn z4_derive_bijections(c: &Z4Code, t: usize) -> Result<Z4Bijections> {
    let sets = match z4_t_cis_partition(c, t)? {
        PartitionOutcome::Partition(mut sets) => {
            sets.sort_by_key(|s| s[0]);
            sets
        }
        PartitionOutcome::Violation { set, rank } => {
            return Err(Error::Precondition(format!(
                "code is not {t}-CIS: {} columns of rank {rank}",
                set.len()
            )))
        }
    };
    let k = c.k();
    if 2 * k > crate::boolean::MAX_PERMUTATION_BITS {
        return Err(Error::Infeasible(format!(
            "permutations of F_2^{} are too large",
            2 * k
        )));
    }
    let b1 = z4_invert(&c.gen.select_columns(&sets[0]))?
        .ok_or_else(|| Error::InconsistentPartition("first block is singular".into()))?;
    let reduced = b1.mul(&c.gen)?;
    let mut blocks = Vec::new();
    let mut bijections = Vec::new();
    for s in &sets[1..] {
        let m = reduced.select_columns(s);
        let a = z4_invert(&m.transpose())?
            .ok_or_else(|| Error::InconsistentPartition(format!("block {s:?} is singular")))?;
        bijections.push(bijection_through_gray(&a)?);
        blocks.push(m);
    }
    Ok(Z4Bijections {
        sets,
        blocks,
        bijections,
    })
}

/// `x ↦ φ(φ⁻¹(x)·a)` on `F_2^{2k}` for an invertible `k x k` Z4 matrix `a`.
pub fn bijection_through_gray(a: &Z4Matrix) -> Result<BooleanPermutation> {
    let k = a.nrows();
    let table = (0..1u32 << (2 * k))
        .map(|x| {
            let u: Vec<u8> = (0..k)
                .map(|i| {
                    gray_inverse_symbol(((x >> (2 * i)) & 1 == 1, (x >> (2 * i + 1)) & 1 == 1))
                })
                .collect();
            let v = a.left_mul_vec(&u);
            v.iter().enumerate().fold(0u32, |acc, (i, &s)| {
                let (b0, b1) = gray_symbol(s);
                acc | (b0 as u32) << (2 * i) | (b1 as u32) << (2 * i + 1)
            })
        })
        .collect();
    BooleanPermutation::new(2 * k, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gray_table() {
        assert_eq!(gray_map(&[2]).to_string(), "11");
        assert_eq!(gray_map(&[0, 1, 2, 3]).to_string(), "00011110");
        for s in 0..4 {
            assert_eq!(gray_inverse_symbol(gray_symbol(s)), s);
        }
    }

    #[test]
    fn gray_is_an_isometry_on_pairs() {
        for a in 0..16u8 {
            for b in 0..16u8 {
                let x = [a & 3, a >> 2];
                let y = [b & 3, b >> 2];
                let diff: Vec<u8> = x.iter().zip(&y).map(|(p, q)| (p + 4 - q) & 3).collect();
                assert_eq!(gray_map(&x).distance(&gray_map(&y)), lee_weight(&diff));
            }
        }
    }

    #[test]
    fn lee_repetition() {
        let c = Z4Code::new(Z4Matrix::from_strs(&["11"]).unwrap());
        assert_eq!(lee_min_distance(&c).unwrap(), 2);
    }

    #[test]
    fn non_free_code() {
        let c = Z4Code::new(Z4Matrix::from_strs(&["22"]).unwrap());
        assert!(!c.is_free());
        assert_eq!(c.codewords().unwrap().len(), 2);
        assert!(matches!(
            z4_t_cis_partition(&c, 2),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn identity_block_gives_identity_map() {
        let f = bijection_through_gray(&Z4Matrix::identity(2)).unwrap();
        assert_eq!(f, BooleanPermutation::identity(4).unwrap());
    }

    #[test]
    fn doubled_identity_partition() {
        let c = Z4Code::new(Z4Matrix::from_strs(&["1010", "0101"]).unwrap());
        let out = z4_t_cis_partition(&c, 2).unwrap();
        assert_eq!(
            out,
            PartitionOutcome::Partition(vec![vec![0, 1], vec![2, 3]])
        );
    }
}
