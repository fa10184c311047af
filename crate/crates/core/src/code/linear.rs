use std::fmt;

use rayon::prelude::*;

use super::{DistanceEnumerator, DualDistance};
use crate::gf2::{BitMatrix, BitVector};
use crate::{Error, Result};

/// Default bound on the number of messages `2^k` enumerated by
/// [`LinearCode::min_distance`].
pub const DEFAULT_MESSAGE_CAP: u64 = 1 << 28;

/// Below this many messages the Gray-code walk stays on one thread.
const PARALLEL_THRESHOLD_BITS: usize = 16;
const CHUNK_BITS: usize = 14;

/// A binary linear `[n, k]` code given by a full-rank `k x n` generator matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    gen: BitMatrix,
}

/// Result of [`LinearCode::dual`]: the dual of a code with `k = n` is the
/// zero code, which has no generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dual {
    Zero { n: usize },
    Code(LinearCode),
}

impl LinearCode {
    pub fn new(gen: BitMatrix) -> Result<Self> {
        let r = gen.rank();
        if r != gen.nrows() {
            return Err(Error::Precondition(format!(
                "generator matrix has {} rows but rank {r}",
                gen.nrows()
            )));
        }
        Ok(LinearCode { gen })
    }

    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        Self::new(BitMatrix::from_strs(rows)?)
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    pub fn into_generator(self) -> BitMatrix {
        self.gen
    }

    pub fn n(&self) -> usize {
        self.gen.ncols()
    }

    pub fn k(&self) -> usize {
        self.gen.nrows()
    }

    /// Codeword for the message `m` (bit `i` selects row `i`).
    pub fn encode(&self, m: &BitVector) -> BitVector {
        self.gen.left_mul_vec(m)
    }

    /// All `2^k` codewords, indexed by message value. Requires `k <= 24`.
    pub fn codewords(&self) -> Result<Vec<BitVector>> {
        let k = self.k();
        if k > 24 {
            return Err(Error::Infeasible(format!(
                "listing 2^{k} codewords is not supported"
            )));
        }
        let rows = self.gen.rows();
        let mut out = Vec::with_capacity(1 << k);
        out.push(BitVector::zeros(self.n()));
        for m in 1usize..(1 << k) {
            let low = m.trailing_zeros() as usize;
            let mut w = out[m & (m - 1)].clone();
            w.xor_assign(&rows[low]);
            out.push(w);
        }
        Ok(out)
    }

    pub fn contains(&self, w: &BitVector) -> bool {
        assert_eq!(w.len(), self.n());
        let mut rows = self.gen.rows();
        rows.push(w.clone());
        BitMatrix::from_rows(&rows).expect("equal lengths").rank() == self.k()
    }

    /// Weight distribution `A_0..A_n` by Gray-code enumeration of all
    /// messages.
    pub fn weight_distribution(&self, cap: Option<u64>) -> Result<Vec<u64>> {
        self.check_cap(cap)?;
        let n = self.n();
        let parts = gray_walk(&self.gen, |acc: &mut Vec<u64>, w| {
            if acc.is_empty() {
                acc.resize(n + 1, 0);
            }
            acc[w] += 1;
        });
        let mut dist = vec![0u64; n + 1];
        for p in parts {
            for (d, c) in dist.iter_mut().zip(p) {
                *d += c;
            }
        }
        Ok(dist)
    }

    /// Exact minimum distance by Gray-code message enumeration. `cap` bounds
    /// the number of messages (`2^k`); the default is 2^28.
    pub fn min_distance(&self, cap: Option<u64>) -> Result<usize> {
        self.check_cap(cap)?;
        let parts = gray_walk(&self.gen, |acc: &mut Option<usize>, w| {
            if w > 0 {
                *acc = Some(acc.map_or(w, |a| a.min(w)));
            }
        });
        parts
            .into_iter()
            .flatten()
            .min()
            .ok_or_else(|| Error::Internal("a code of rank >= 1 has a nonzero codeword".into()))
    }

    fn check_cap(&self, cap: Option<u64>) -> Result<()> {
        let cap = cap.unwrap_or(DEFAULT_MESSAGE_CAP);
        let k = self.k();
        if k >= 63 || (1u64 << k) > cap {
            return Err(Error::Infeasible(format!(
                "2^{k} messages exceed the enumeration cap of {cap}"
            )));
        }
        Ok(())
    }

    /// An equivalent generator whose first `k` columns are the identity,
    /// together with the column permutation used: column `perm[j]` of the
    /// input becomes column `j` of the output.
    pub fn systematic_form(&self) -> (LinearCode, Vec<usize>) {
        let (r, pivots) = self.gen.rref();
        let k = self.k();
        let mut perm: Vec<usize> = pivots.clone();
        let mut is_pivot = vec![false; self.n()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        perm.extend((0..self.n()).filter(|&j| !is_pivot[j]));
        debug_assert_eq!(pivots.len(), k);
        let sys = r.select_columns(&perm);
        (LinearCode { gen: sys }, perm)
    }

    /// The dual code with respect to the standard inner product.
    pub fn dual(&self) -> Dual {
        let n = self.n();
        let k = self.k();
        if k == n {
            return Dual::Zero { n };
        }
        let (r, pivots) = self.gen.rref();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let mut h = BitMatrix::zeros(free.len(), n);
        for (row, &f) in free.iter().enumerate() {
            h.set(row, f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, f) {
                    h.set(row, p, true);
                }
            }
        }
        Dual::Code(LinearCode { gen: h })
    }

    /// Minimum distance of the dual code, from the MacWilliams transform of
    /// the weight distribution. `cap` bounds `2^k` as in
    /// [`LinearCode::min_distance`].
    pub fn dual_distance(&self, cap: Option<u64>) -> Result<DualDistance> {
        let dist = self.weight_distribution(cap)?;
        let size = num_bigint::BigUint::from(1u8) << self.k();
        let counts = dist.into_iter().map(|a| &size * a).collect();
        DistanceEnumerator::from_counts(size, counts)?.dual_distance()
    }

    /// True iff `G·Gᵀ = 0`.
    pub fn is_self_orthogonal(&self) -> bool {
        let rows = self.gen.rows();
        rows.iter()
            .enumerate()
            .all(|(i, a)| rows[i..].iter().all(|b| !a.dot(b)))
    }

    /// Replaces the zero columns, in order, by the unit columns `e_1, e_2, …`.
    pub fn star_fill_zero_columns(&self) -> Result<LinearCode> {
        let zero_cols: Vec<usize> = (0..self.n())
            .filter(|&j| (0..self.k()).all(|i| !self.gen.get(i, j)))
            .collect();
        if zero_cols.len() >= self.k() {
            return Err(Error::Precondition(format!(
                "{} zero columns cannot be filled from {} unit columns",
                zero_cols.len(),
                self.k()
            )));
        }
        let mut g = self.gen.clone();
        for (unit, &j) in zero_cols.iter().enumerate() {
            g.set(unit, j, true);
        }
        LinearCode::new(g)
    }

    /// Column `perm[j]` of `self` becomes column `j` of the result.
    pub fn select_columns(&self, perm: &[usize]) -> Result<LinearCode> {
        LinearCode::new(self.gen.select_columns(perm))
    }

    /// Same code under a new basis `t·G` (`t` invertible).
    pub fn change_basis(&self, t: &BitMatrix) -> Result<LinearCode> {
        LinearCode::new(t.mul(&self.gen)?)
    }
}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gen)
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearCode [{}, {}]", self.n(), self.k())?;
        write!(f, "{}", self.gen)
    }
}

/// Walks all `2^k` codewords in Gray-code order, one row XOR per step, and
/// hands each weight to `visit`. Large walks are split into chunks processed
/// in parallel; the per-chunk accumulators are returned in chunk order.
fn gray_walk<A, F>(gen: &BitMatrix, visit: F) -> Vec<A>
where
    A: Default + Send,
    F: Fn(&mut A, usize) + Sync,
{
    let k = gen.nrows();
    let rows: Vec<Vec<u64>> = (0..k).map(|i| gen.row_words(i).to_vec()).collect();
    let words = rows[0].len();
    let total: u64 = 1u64 << k;
    let chunk_bits = if k >= PARALLEL_THRESHOLD_BITS {
        CHUNK_BITS
    } else {
        k
    };
    let chunks = 1u64 << (k - chunk_bits);
    let run = |c: u64| {
        let mut acc = A::default();
        let start = c << chunk_bits;
        let end = (start + (1u64 << chunk_bits)).min(total);
        let gray = start ^ (start >> 1);
        let mut cw = vec![0u64; words];
        for (i, row) in rows.iter().enumerate() {
            if (gray >> i) & 1 == 1 {
                for (a, b) in cw.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        visit(&mut acc, cw.iter().map(|w| w.count_ones() as usize).sum());
        for i in start + 1..end {
            let row = &rows[i.trailing_zeros() as usize];
            let mut w = 0;
            for (a, b) in cw.iter_mut().zip(row) {
                *a ^= b;
                w += a.count_ones() as usize;
            }
            visit(&mut acc, w);
        }
        acc
    };
    if chunks == 1 {
        vec![run(0)]
    } else {
        (0..chunks).into_par_iter().map(run).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetition_code() {
        let c = LinearCode::from_strs(&["111"]).unwrap();
        assert_eq!(c.min_distance(None).unwrap(), 3);
        assert!(!c.is_self_orthogonal());
        let Dual::Code(d) = c.dual() else { panic!() };
        assert_eq!((d.n(), d.k()), (3, 2));
        assert_eq!(c.dual_distance(None).unwrap(), DualDistance::Finite(2));
        assert_eq!(d.dual_distance(None).unwrap(), DualDistance::Finite(3));
        assert_eq!(d.weight_distribution(None).unwrap(), vec![1, 0, 3, 0]);
    }

    #[test]
    fn rank_deficient_generator_rejected() {
        assert!(LinearCode::from_strs(&["110", "110"]).is_err());
    }

    #[test]
    fn full_space_dual_is_zero_code() {
        let c = LinearCode::new(BitMatrix::identity(4)).unwrap();
        assert_eq!(c.dual(), Dual::Zero { n: 4 });
        assert_eq!(c.dual_distance(None).unwrap(), DualDistance::Undefined);
    }

    #[test]
    fn systematic_form_examples() {
        let c = LinearCode::from_strs(&["10110", "01011"]).unwrap();
        let (s, p) = c.systematic_form();
        assert_eq!(s, c);
        assert_eq!(p, vec![0, 1, 2, 3, 4]);

        let c = LinearCode::from_strs(&["0110", "0011"]).unwrap();
        let (s, p) = c.systematic_form();
        assert_eq!(p, vec![1, 2, 0, 3]);
        assert_eq!(
            s.generator().select_columns(&[0, 1]),
            BitMatrix::identity(2)
        );
        assert_eq!(s.min_distance(None).unwrap(), c.min_distance(None).unwrap());
    }

    #[test]
    fn self_orthogonality_of_the_six_two_code() {
        let c = LinearCode::from_strs(&["101110", "010111"]).unwrap();
        // direct G·Gᵀ
        let g = c.generator();
        let prod = g.mul(&g.transpose()).unwrap();
        assert_eq!(c.is_self_orthogonal(), prod.is_zero());
        assert!(c.is_self_orthogonal());
        assert_eq!(c.min_distance(None).unwrap(), 4);
    }

    #[test]
    fn star_fill() {
        let c = LinearCode::from_strs(&["101", "011"]).unwrap();
        assert_eq!(c.star_fill_zero_columns().unwrap(), c);

        let c = LinearCode::from_strs(&["1011100", "0111001"]).unwrap();
        let s = c.star_fill_zero_columns().unwrap();
        assert_eq!(s.generator().to_string(), "1011110\n0111001");

        let c = LinearCode::from_strs(&["1000100", "0100000", "0010001"]).unwrap();
        let s = c.star_fill_zero_columns().unwrap();
        assert_eq!(s.generator().to_string(), "1001100\n0100010\n0010001");

        let c = LinearCode::from_strs(&["1000", "0100"]).unwrap();
        assert!(c.star_fill_zero_columns().is_err());
    }

    #[test]
    fn message_cap_refuses() {
        let c = LinearCode::new(BitMatrix::identity(12)).unwrap();
        assert!(matches!(
            c.min_distance(Some(1 << 11)),
            Err(Error::Infeasible(_))
        ));
        assert_eq!(c.min_distance(Some(1 << 12)).unwrap(), 1);
    }

    #[test]
    fn parallel_walk_matches_codeword_list() {
        // k = 17 exercises the chunked path
        let mut g = BitMatrix::zeros(17, 40);
        let mut s: u64 = 0x9e3779b97f4a7c15;
        for i in 0..17 {
            g.set(i, i, true);
            for j in 17..40 {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                g.set(i, j, s & 1 == 1);
            }
        }
        let c = LinearCode::new(g).unwrap();
        let dist = c.weight_distribution(None).unwrap();
        let mut direct = vec![0u64; 41];
        for w in c.codewords().unwrap() {
            direct[w.weight()] += 1;
        }
        assert_eq!(dist, direct);
        let d = (1..=40).find(|&i| direct[i] > 0).unwrap();
        assert_eq!(c.min_distance(None).unwrap(), d);
    }
}
