use super::walsh::tuple_strength;
use super::BooleanPermutation;
use crate::code::{dual_distance, DualDistance, LinearCode, UnrestrictedCode};
use crate::gf2::{BitMatrix, BitVector};
use crate::partition::{t_cis_partition, ColumnMatroid, PartitionOutcome};
use crate::{Error, Result};

/// Largest total number of message bits `t·k` for [`build_masking_code`].
pub const MAX_MASKING_BITS: usize = 20;
/// Largest `k` for [`verify_pair_duality`].
pub const MAX_DUALITY_BITS: usize = 4;

/// The code `{(x_1 ⊕ … ⊕ x_t, F_1(x_1), …, F_t(x_t))}` of length `(t+1)k`
/// and size `2^{tk}`. Marked distance invariant when every `F_i` is linear.
pub fn build_masking_code(fs: &[BooleanPermutation]) -> Result<UnrestrictedCode> {
    let k = common_k(fs)?;
    let t = fs.len();
    if t * k > MAX_MASKING_BITS {
        return Err(Error::Infeasible(format!(
            "masking code with {t}·{k} message bits exceeds {MAX_MASKING_BITS}"
        )));
    }
    let n = (t + 1) * k;
    let mask = (1u64 << k) - 1;
    let words = (0..1u64 << (t * k))
        .map(|m| {
            let mut sum = 0u64;
            let mut word = 0u64;
            for (i, f) in fs.iter().enumerate() {
                let x = (m >> (i * k)) & mask;
                sum ^= x;
                word |= (f.apply(x as u32) as u64) << ((i + 1) * k);
            }
            BitVector::from_u64(n, word | sum)
        })
        .collect();
    Ok(UnrestrictedCode::new(n, words)?.with_distance_invariance(fs.iter().all(|f| f.is_linear())))
}

fn common_k(fs: &[BooleanPermutation]) -> Result<usize> {
    let Some(f) = fs.first() else {
        return Err(Error::Dimension("need at least one permutation".into()));
    };
    if fs.iter().any(|g| g.k() != f.k()) {
        return Err(Error::Dimension("permutations have different sizes".into()));
    }
    Ok(f.k())
}

/// Both sides of the strength / dual-distance correspondence, computed
/// independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub strength: usize,
    pub dual_distance: DualDistance,
}

impl DualityReport {
    /// True when the dual distance equals the strength plus one.
    pub fn holds(&self) -> bool {
        self.dual_distance == DualDistance::Finite(self.strength + 1)
    }
}

/// Strength of the pair against the dual distance of `C(F_1, F_2)`; `k ≤ 4`.
pub fn verify_pair_duality(
    f1: &BooleanPermutation,
    f2: &BooleanPermutation,
) -> Result<DualityReport> {
    verify_tuple_duality(&[f1.clone(), f2.clone()])
}

/// Same comparison for a tuple of any length, `k ≤ 4` and `t·k ≤ 16`.
pub fn verify_tuple_duality(fs: &[BooleanPermutation]) -> Result<DualityReport> {
    let k = common_k(fs)?;
    if k > MAX_DUALITY_BITS || fs.len() * k > 16 {
        return Err(Error::Infeasible(format!(
            "duality check limited to k <= {MAX_DUALITY_BITS} and t·k <= 16"
        )));
    }
    let strength = tuple_strength(fs)?.value;
    // all-pairs counting, independent of the linearity shortcut
    let code = build_masking_code(fs)?.with_distance_invariance(false);
    Ok(DualityReport {
        strength,
        dual_distance: dual_distance(&code)?,
    })
}

/// Result of [`derive_bijections`].
#[derive(Clone, Debug)]
pub struct DerivedBijections {
    /// Information sets ordered by their smallest coordinate.
    pub sets: Vec<Vec<usize>>,
    /// The blocks `L_1, …, L_{t−1}` of the code written as `(I_k | L_1 | …)`
    /// with columns regrouped by information set.
    pub blocks: Vec<BitMatrix>,
    /// `F_i(x) = x·(L_iᵀ)⁻¹`.
    pub bijections: Vec<BooleanPermutation>,
}

impl DerivedBijections {
    /// Matrices of the derived maps, `(L_iᵀ)⁻¹`.
    pub fn matrices(&self) -> Vec<&BitMatrix> {
        self.bijections
            .iter()
            .map(|f| f.matrix().expect("derived maps are linear"))
            .collect()
    }

    /// The code `(I_k | L_1 | … | L_{t−1})`.
    pub fn block_code(&self) -> Result<LinearCode> {
        let k = self.blocks.first().map_or(0, |b| b.nrows());
        let mut g = BitMatrix::identity(k);
        for b in &self.blocks {
            g = g.hcat(b)?;
        }
        LinearCode::new(g)
    }
}

/// Turns a t-CIS code into `t − 1` linear bijections whose masking code has
/// the given code as its dual. The partition is computed first.
pub fn derive_bijections(c: &LinearCode, t: usize) -> Result<DerivedBijections> {
    match t_cis_partition(c, t)? {
        PartitionOutcome::Partition(sets) => derive_bijections_with_partition(c, &sets),
        PartitionOutcome::Violation { set, rank } => Err(Error::Precondition(format!(
            "code is not {t}-CIS: {} columns of rank {rank}",
            set.len()
        ))),
    }
}

/// As [`derive_bijections`] with a given family of disjoint information sets.
pub fn derive_bijections_with_partition(
    c: &LinearCode,
    sets: &[Vec<usize>],
) -> Result<DerivedBijections> {
    let k = c.k();
    let t = sets.len();
    if t < 2 || c.n() != t * k {
        return Err(Error::Dimension(format!(
            "{t} sets do not partition a code of length {}",
            c.n()
        )));
    }
    let mut sets: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s
        })
        .collect();
    sets.sort_by_key(|s| s.first().copied());
    let m = ColumnMatroid::new(c.generator());
    for s in &sets {
        if !m.is_basis(s) {
            return Err(Error::InconsistentPartition(format!(
                "columns {s:?} are not an information set"
            )));
        }
    }
    let g = c.generator();
    let b1_inv = g
        .select_columns(&sets[0])
        .invert()?
        .ok_or_else(|| Error::InconsistentPartition("first block is singular".into()))?;
    let reduced = b1_inv.mul(g)?;
    let mut blocks = Vec::with_capacity(t - 1);
    let mut bijections = Vec::with_capacity(t - 1);
    for s in &sets[1..] {
        let l = reduced.select_columns(s);
        let f = l
            .transpose()
            .invert()?
            .ok_or_else(|| Error::InconsistentPartition(format!("block {s:?} is singular")))?;
        bijections.push(BooleanPermutation::from_matrix(&f)?);
        blocks.push(l);
    }
    Ok(DerivedBijections {
        sets,
        blocks,
        bijections,
    })
}
