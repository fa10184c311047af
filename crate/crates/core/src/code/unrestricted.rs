use std::collections::HashSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::LinearCode;
use crate::gf2::BitVector;
use crate::{Error, Result};

/// Largest code handled by the all-pairs distance count.
pub const MAX_PAIRWISE_SIZE: usize = 1 << 16;
/// Largest code handled when distances are read off one translate.
pub const MAX_INVARIANT_SIZE: usize = 1 << 20;

/// A possibly nonlinear binary code: a set of distinct words of length `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct UnrestrictedCode {
    n: usize,
    words: Vec<BitVector>,
    distance_invariant: bool,
}

impl UnrestrictedCode {
    pub fn new(n: usize, words: Vec<BitVector>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::Degenerate("a code needs at least one word".into()));
        }
        let mut seen = HashSet::with_capacity(words.len());
        for w in &words {
            if w.len() != n {
                return Err(Error::Dimension(format!(
                    "word of length {} in a code of length {n}",
                    w.len()
                )));
            }
            if !seen.insert(w) {
                return Err(Error::Precondition(format!("duplicate word {w}")));
            }
        }
        Ok(UnrestrictedCode {
            n,
            words,
            distance_invariant: false,
        })
    }

    /// Marks the code as distance invariant: the distances from any fixed
    /// word to all the others have the same distribution. Linear codes and
    /// Gray images of Z4-linear codes qualify. The flag is trusted.
    pub fn with_distance_invariance(mut self, yes: bool) -> Self {
        self.distance_invariant = yes;
        self
    }

    pub fn from_linear(c: &LinearCode) -> Result<Self> {
        if c.k() > 20 {
            return Err(Error::Infeasible(format!(
                "2^{} codewords is too many to list",
                c.k()
            )));
        }
        Ok(UnrestrictedCode {
            n: c.n(),
            words: c.codewords()?,
            distance_invariant: true,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[BitVector] {
        &self.words
    }

    pub fn is_distance_invariant(&self) -> bool {
        self.distance_invariant
    }

    pub fn contains(&self, w: &BitVector) -> bool {
        self.words.contains(w)
    }

    /// Words as a set, for order-insensitive comparison.
    pub fn word_set(&self) -> HashSet<BitVector> {
        self.words.iter().cloned().collect()
    }

    /// Smallest distance between two distinct words; `None` for a one-word code.
    pub fn min_distance(&self) -> Result<Option<usize>> {
        let e = distance_enumerator(self, self.distance_invariant)?;
        Ok((1..=self.n).find(|&i| !e.counts[i].is_zero()))
    }
}

impl fmt::Debug for UnrestrictedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "UnrestrictedCode(n={}, |C|={})",
            self.n,
            self.words.len()
        )
    }
}

/// Distance distribution scaled by the code size: `counts[i]` is the number
/// of ordered pairs of codewords at distance `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceEnumerator {
    n: usize,
    size: BigUint,
    counts: Vec<BigUint>,
}

/// Dual distance, or `Undefined` when every transformed coefficient beyond
/// the zeroth vanishes (the code is all of `F_2^n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualDistance {
    Finite(usize),
    Undefined,
}

impl DualDistance {
    pub fn finite(self) -> Option<usize> {
        match self {
            DualDistance::Finite(d) => Some(d),
            DualDistance::Undefined => None,
        }
    }
}

impl fmt::Display for DualDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualDistance::Finite(d) => write!(f, "{d}"),
            DualDistance::Undefined => f.write_str("undefined"),
        }
    }
}

impl DistanceEnumerator {
    /// Builds an enumerator from raw counts, checking `Σ N_i = |C|²` and `N_0 = |C|`.
    pub fn from_counts(size: BigUint, counts: Vec<BigUint>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::Dimension("enumerator needs n + 1 counts".into()));
        }
        let total: BigUint = counts.iter().sum();
        if total != &size * &size || counts[0] != size {
            return Err(Error::Precondition(
                "counts are not a distance distribution of a code of the given size".into(),
            ));
        }
        Ok(DistanceEnumerator {
            n: counts.len() - 1,
            size,
            counts,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> &BigUint {
        &self.size
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `|C|² · B_j^⊥` for `j = 0..=n`, from substituting `(X+Y, X−Y)` into
    /// the distance enumerator.
    pub fn macwilliams(&self) -> Vec<BigInt> {
        let n = self.n;
        let binom = binomials(n);
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, ni) in self.counts.iter().enumerate() {
            if ni.is_zero() {
                continue;
            }
            let ni = BigInt::from(ni.clone());
            for (j, o) in out.iter_mut().enumerate() {
                *o += &ni * krawtchouk(&binom, n, j, i);
            }
        }
        out
    }

    /// Smallest `j > 0` with `B_j^⊥ ≠ 0`.
    pub fn dual_distance(&self) -> Result<DualDistance> {
        let t = self.macwilliams();
        if t.iter().any(|v| v.is_negative()) {
            return Err(Error::Internal(
                "negative transformed distance coefficient".into(),
            ));
        }
        Ok((1..=self.n)
            .find(|&j| !t[j].is_zero())
            .map_or(DualDistance::Undefined, DualDistance::Finite))
    }

    /// For a linear code, the enumerator of the dual code, obtained by
    /// rescaling the transform. `None` when the rescaling is not exact.
    pub fn linear_dual(&self) -> Option<DistanceEnumerator> {
        let t = self.macwilliams();
        let size = BigInt::from(self.size.clone());
        let dual_size = BigInt::from(1u8) << self.n;
        let dual_size = (&dual_size / &size, &dual_size % &size);
        if !dual_size.1.is_zero() {
            return None;
        }
        let dual_size = dual_size.0;
        let mut counts = Vec::with_capacity(t.len());
        let den = &size * &size;
        for v in t {
            // transform entries are |C|² A⊥_j; scaled counts are |C⊥| A⊥_j
            let num = v * &dual_size;
            if !(&num % &den).is_zero() {
                return None;
            }
            counts.push((num / &den).to_biguint()?);
        }
        let size = dual_size.to_biguint()?;
        DistanceEnumerator::from_counts(size, counts).ok()
    }
}

/// Exact distance enumerator. With the hint set, the counts are `|C|` times
/// the weight distribution of `{x ⊕ c₀}` for the first word `c₀`.
pub fn distance_enumerator(
    c: &UnrestrictedCode,
    distance_invariant: bool,
) -> Result<DistanceEnumerator> {
    let n = c.n;
    let size = c.words.len();
    let counts: Vec<u64> = if distance_invariant {
        if size > MAX_INVARIANT_SIZE {
            return Err(Error::Infeasible(format!(
                "{size} words exceed the limit of {MAX_INVARIANT_SIZE}"
            )));
        }
        let c0 = &c.words[0];
        let mut h = vec![0u64; n + 1];
        for w in &c.words {
            h[w.distance(c0)] += 1;
        }
        h.iter().map(|&v| v * size as u64).collect()
    } else {
        if size > MAX_PAIRWISE_SIZE {
            return Err(Error::Infeasible(format!(
                "{size} words exceed the all-pairs limit of {MAX_PAIRWISE_SIZE}"
            )));
        }
        let words = &c.words;
        let mut h = (0..size)
            .into_par_iter()
            .fold(
                || vec![0u64; n + 1],
                |mut acc, i| {
                    for w in &words[i + 1..] {
                        acc[words[i].distance(w)] += 2;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
        h[0] += size as u64;
        h
    };
    DistanceEnumerator::from_counts(
        BigUint::from(size),
        counts.into_iter().map(BigUint::from).collect(),
    )
}

/// Dual distance through the MacWilliams transform, using the code's own
/// distance-invariance flag to pick the counting method.
pub fn dual_distance(c: &UnrestrictedCode) -> Result<DualDistance> {
    distance_enumerator(c, c.distance_invariant)?.dual_distance()
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// `K_j(i) = Σ_s (−1)^s C(i,s) C(n−i, j−s)`.
fn krawtchouk(binom: &[Vec<BigInt>], n: usize, j: usize, i: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for s in 0..=j.min(i) {
        if j - s > n - i {
            continue;
        }
        let term = &binom[i][s] * &binom[n - i][j - s];
        if s % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Dual;

    fn words(strs: &[&str]) -> Vec<BitVector> {
        strs.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn two_word_code() {
        let c = UnrestrictedCode::new(2, words(&["00", "11"])).unwrap();
        let e = distance_enumerator(&c, false).unwrap();
        let want: Vec<BigUint> = [2u32, 0, 2].into_iter().map(BigUint::from).collect();
        assert_eq!(e.counts(), &want[..]);
        assert_eq!(distance_enumerator(&c, true).unwrap(), e);
        // dual is the even-weight code of length 2: {00, 11}
        assert_eq!(e.dual_distance().unwrap(), DualDistance::Finite(2));
    }

    #[test]
    fn duplicates_and_lengths_rejected() {
        assert!(UnrestrictedCode::new(2, words(&["00", "00"])).is_err());
        assert!(UnrestrictedCode::new(3, words(&["00"])).is_err());
    }

    #[test]
    fn full_space_has_undefined_dual_distance() {
        let all: Vec<BitVector> = (0..8).map(|v| BitVector::from_u64(3, v)).collect();
        let c = UnrestrictedCode::new(3, all).unwrap();
        assert_eq!(dual_distance(&c).unwrap(), DualDistance::Undefined);
    }

    #[test]
    fn linear_enumerator_is_scaled_weight_distribution() {
        let c = LinearCode::from_strs(&["101110", "010111"]).unwrap();
        let u = UnrestrictedCode::from_linear(&c).unwrap();
        let e = distance_enumerator(&u, false).unwrap();
        let a = c.weight_distribution(None).unwrap();
        for (ni, ai) in e.counts().iter().zip(&a) {
            assert_eq!(*ni, BigUint::from(4 * ai));
        }
        let Dual::Code(d) = c.dual() else { panic!() };
        assert_eq!(
            e.dual_distance().unwrap(),
            DualDistance::Finite(d.min_distance(None).unwrap())
        );
    }

    #[test]
    fn transform_recovers_dual_enumerator() {
        let c = LinearCode::from_strs(&["1001101", "0101011", "0010111"]).unwrap();
        let e = distance_enumerator(&UnrestrictedCode::from_linear(&c).unwrap(), true).unwrap();
        let Dual::Code(d) = c.dual() else { panic!() };
        let ed = distance_enumerator(&UnrestrictedCode::from_linear(&d).unwrap(), true).unwrap();
        assert_eq!(e.linear_dual().unwrap(), ed);
        assert_eq!(ed.linear_dual().unwrap(), e);
    }

    #[test]
    fn krawtchouk_small_values() {
        let b = binomials(4);
        // K_1(i) = n - 2i
        for i in 0..=4 {
            assert_eq!(krawtchouk(&b, 4, 1, i), BigInt::from(4 - 2 * i as i64));
        }
        assert_eq!(krawtchouk(&b, 4, 0, 3), BigInt::one());
    }
}
