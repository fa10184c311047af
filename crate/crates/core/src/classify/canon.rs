use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::code::LinearCode;
use crate::gf2::{BitMatrix, BitVector};
use crate::{Error, Result};

/// Largest dimension accepted by [`canonical_form`].
pub const MAX_CANON_DIM: usize = 6;

/// Canonical representative of a code under coordinate permutation.
///
/// Two full-rank generators span permutation-equivalent codes exactly when
/// some `T ∈ GL(k, 2)` maps the column multiset of one onto the other. The
/// key is the lexicographically largest column-count vector over that orbit:
/// `counts[v]` is the multiplicity of column value `v` (bit `i` = row `i`)
/// after the best change of basis.
#[derive(Debug, Clone)]
pub struct CanonicalCode {
    k: usize,
    n: usize,
    counts: Vec<u32>,
    transform: BitMatrix,
    perm: Vec<usize>,
    stabilizer: u64,
}

impl CanonicalCode {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Generator with the columns listed by increasing value.
    pub fn generator(&self) -> BitMatrix {
        let mut cols = Vec::with_capacity(self.n);
        for (v, &c) in self.counts.iter().enumerate() {
            for _ in 0..c {
                cols.push(BitVector::from_u64(self.k, v as u64));
            }
        }
        BitMatrix::from_columns(&cols).expect("k >= 1 rows")
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::new(self.generator()).expect("canonical generator keeps full rank")
    }

    /// `T` with `T·G·P = generator()`, where `P` selects the columns `perm()`.
    pub fn transform(&self) -> &BitMatrix {
        &self.transform
    }

    /// Column `j` of the canonical generator comes from input column `perm()[j]`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Number of `T ∈ GL(k, 2)` fixing the column multiset.
    pub fn linear_stabilizer_order(&self) -> u64 {
        self.stabilizer
    }

    /// Order of the permutation automorphism group of the code.
    pub fn automorphism_group_order(&self) -> u128 {
        let mut order = self.stabilizer as u128;
        for &c in &self.counts {
            for f in 2..=c as u128 {
                order *= f;
            }
        }
        order
    }
}

impl PartialEq for CanonicalCode {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n && self.counts == other.counts
    }
}

impl Eq for CanonicalCode {}

impl Hash for CanonicalCode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.k.hash(state);
        self.counts.hash(state);
    }
}

impl PartialOrd for CanonicalCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Larger count vectors sort first, so the order matches the search preference.
impl Ord for CanonicalCode {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k, self.n)
            .cmp(&(other.k, other.n))
            .then_with(|| other.counts.cmp(&self.counts))
    }
}

pub fn canonical_form(c: &LinearCode) -> Result<CanonicalCode> {
    let (k, n) = (c.k(), c.n());
    if k == 0 || k > MAX_CANON_DIM {
        return Err(Error::Infeasible(format!(
            "canonical forms need 1 <= k <= {MAX_CANON_DIM}, got {k}"
        )));
    }
    let g = c.generator();
    let cols: Vec<usize> = (0..n).map(|j| g.column_u64(j) as usize).collect();
    let mut mult = vec![0u32; 1 << k];
    for &v in &cols {
        mult[v] += 1;
    }

    let mut s = Search {
        k,
        mult: &mult,
        pre: vec![0],
        best: None,
        best_pre: Vec::new(),
        ties: 0,
    };
    s.run(0);
    let counts = s.best.expect("GL(k, 2) is nonempty");

    // pre[s] is the column value sent to s
    let mut img = vec![0usize; 1 << k];
    for (s_val, &p) in s.best_pre.iter().enumerate() {
        img[p] = s_val;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&j| (img[cols[j]], j));
    let transform = BitMatrix::from_columns(
        &(0..k)
            .map(|j| BitVector::from_u64(k, img[1 << j] as u64))
            .collect::<Vec<_>>(),
    )?;

    Ok(CanonicalCode {
        k,
        n,
        counts,
        transform,
        perm,
        stabilizer: s.ties,
    })
}

struct Search<'a> {
    k: usize,
    mult: &'a [u32],
    // pre[s] = T^{-1}·s for the basis images chosen so far
    pre: Vec<usize>,
    best: Option<Vec<u32>>,
    best_pre: Vec<usize>,
    ties: u64,
}

impl Search<'_> {
    fn run(&mut self, level: usize) {
        if level == self.k {
            let cur: Vec<u32> = self.pre.iter().map(|&p| self.mult[p]).collect();
            match self.best.as_ref().map(|b| cur.cmp(b)) {
                Some(Ordering::Less) => {}
                Some(Ordering::Equal) => self.ties += 1,
                _ => {
                    self.best = Some(cur);
                    self.best_pre = self.pre.clone();
                    self.ties = 1;
                }
            }
            return;
        }
        let half = self.pre.len();
        let mut in_span = vec![false; self.mult.len()];
        for &p in &self.pre {
            in_span[p] = true;
        }
        for (v, &spanned) in in_span.iter().enumerate() {
            if spanned {
                continue;
            }
            for s in 0..half {
                let p = self.pre[s] ^ v;
                self.pre.push(p);
            }
            if !self.dominated() {
                self.run(level + 1);
            }
            self.pre.truncate(half);
        }
    }

    /// True when the prefix chosen so far is already worse than the best.
    fn dominated(&self) -> bool {
        let Some(best) = &self.best else {
            return false;
        };
        for (&p, b) in self.pre.iter().zip(best) {
            match self.mult[p].cmp(b) {
                Ordering::Less => return true,
                Ordering::Greater => return false,
                Ordering::Equal => {}
            }
        }
        false
    }
}

/// Column-permutation equivalence of two codes of the same shape.
pub fn equivalent(a: &LinearCode, b: &LinearCode) -> Result<bool> {
    if (a.n(), a.k()) != (b.n(), b.k()) {
        return Err(Error::Dimension(format!(
            "[{}, {}] vs [{}, {}]",
            a.n(),
            a.k(),
            b.n(),
            b.k()
        )));
    }
    if a.weight_distribution(None)? != b.weight_distribution(None)? {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_reproduces_generator() {
        let c = LinearCode::from_strs(&["1011100", "0111010", "1100101"]).unwrap();
        let f = canonical_form(&c).unwrap();
        let moved = f
            .transform()
            .mul(&c.generator().select_columns(f.perm()))
            .unwrap();
        assert_eq!(moved, f.generator());
    }

    #[test]
    fn shuffled_rows_and_columns_agree() {
        let a = LinearCode::from_strs(&["101110", "010111"]).unwrap();
        let b = LinearCode::from_strs(&["111001", "010111"]).unwrap();
        let b = b.select_columns(&[5, 3, 1, 0, 2, 4]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert!(equivalent(&a, &b).unwrap());
    }

    #[test]
    fn repetition_automorphisms() {
        // (I|I|I) for k = 2: GL stabilizer is the two coordinate swaps, times 3!^2
        let c = LinearCode::from_strs(&["101010", "010101"]).unwrap();
        let f = canonical_form(&c).unwrap();
        assert_eq!(f.linear_stabilizer_order(), 2);
        assert_eq!(f.automorphism_group_order(), 72);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = LinearCode::from_strs(&["111"]).unwrap();
        let b = LinearCode::from_strs(&["1111"]).unwrap();
        assert!(equivalent(&a, &b).is_err());
    }
}
