use rayon::prelude::*;

use super::BooleanPermutation;
use crate::{Error, Result};

/// Largest `k` for which a full Walsh table is built.
pub const MAX_WALSH_BITS: usize = 12;
/// Largest `k` accepted by [`cip_strength`].
pub const MAX_CIP_BITS: usize = 10;
/// Guards for [`t_ci_strength`].
pub const MAX_TCI_BITS: usize = 8;
pub const MAX_TCI_FUNCTIONS: usize = 4;

/// All values `W_F(a, b) = Σ_x (−1)^{a·x + b·F(x)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshTable {
    k: usize,
    // index (b << k) | a
    values: Vec<i32>,
}

impl WalshTable {
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, a: u32, b: u32) -> i32 {
        self.values[((b as usize) << self.k) | a as usize]
    }

    /// Spectrum of the component `b·F` over all `a`.
    pub fn component(&self, b: u32) -> &[i32] {
        let len = 1usize << self.k;
        &self.values[b as usize * len..(b as usize + 1) * len]
    }
}

/// In-place Walsh–Hadamard transform (unnormalized).
pub(crate) fn fwht(v: &mut [i32]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (x, y) = (v[j], v[j + h]);
                v[j] = x + y;
                v[j + h] = x - y;
            }
        }
        h *= 2;
    }
}

fn component_spectrum(f: &BooleanPermutation, b: u32) -> Vec<i32> {
    let mut v: Vec<i32> = f
        .table()
        .iter()
        .map(|&y| if (b & y).count_ones() & 1 == 1 { -1 } else { 1 })
        .collect();
    fwht(&mut v);
    v
}

pub fn walsh_table(f: &BooleanPermutation) -> Result<WalshTable> {
    let k = f.k();
    if k > MAX_WALSH_BITS {
        return Err(Error::Infeasible(format!(
            "Walsh table for k = {k} exceeds the limit {MAX_WALSH_BITS}"
        )));
    }
    let values = (0..1u32 << k)
        .into_par_iter()
        .flat_map_iter(|b| component_spectrum(f, b))
        .collect();
    Ok(WalshTable { k, values })
}

/// For every `a`, the least weight of a `b` with `W_F(a, b) ≠ 0`, together
/// with the smallest such `b` of that weight.
pub(crate) fn min_support_weights(f: &BooleanPermutation) -> Vec<(u32, u32)> {
    let k = f.k();
    let len = 1usize << k;
    let init = || vec![(u32::MAX, u32::MAX); len];
    (0..1u32 << k)
        .into_par_iter()
        .fold(init, |mut acc, b| {
            let w = b.count_ones();
            for (a, &v) in component_spectrum(f, b).iter().enumerate() {
                if v != 0 && (w, b) < acc[a] {
                    acc[a] = (w, b);
                }
            }
            acc
        })
        .reduce(init, |mut x, y| {
            for (p, q) in x.iter_mut().zip(y) {
                if q < *p {
                    *p = q;
                }
            }
            x
        })
}

/// Strength of a correlation-immune tuple, with a violating tuple
/// `(a_0, a_1, …, a_t)` whose weights sum to `value + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strength {
    pub value: usize,
    pub witness: Vec<u32>,
}

/// Largest `d` such that `W_{F_1}(a, b) = 0` or `W_{F_2}(a, c) = 0` whenever
/// `a ≠ 0` and `w(a) + w(b) + w(c) ≤ d`.
///
/// For each `a ≠ 0` a permutation always has some `b` with `W(a, b) ≠ 0`
/// (Parseval), so the strength is always finite.
pub fn cip_strength(f1: &BooleanPermutation, f2: &BooleanPermutation) -> Result<Strength> {
    if f1.k() > MAX_CIP_BITS {
        return Err(Error::Infeasible(format!(
            "CIP strength for k = {} exceeds the limit {MAX_CIP_BITS}",
            f1.k()
        )));
    }
    tuple_strength(&[f1.clone(), f2.clone()])
}

/// Strength of a t-tuple: largest `d` such that `Π_i W_{F_i}(a_0, a_i) = 0`
/// whenever `a_0 ≠ 0` and `Σ w(a_i) ≤ d`.
pub fn t_ci_strength(fs: &[BooleanPermutation]) -> Result<Strength> {
    if fs.len() > MAX_TCI_FUNCTIONS {
        return Err(Error::Infeasible(format!(
            "{} functions exceed the limit {MAX_TCI_FUNCTIONS}",
            fs.len()
        )));
    }
    if fs.first().is_some_and(|f| f.k() > MAX_TCI_BITS) {
        return Err(Error::Infeasible(format!(
            "t-CI strength for k = {} exceeds the limit {MAX_TCI_BITS}",
            fs[0].k()
        )));
    }
    tuple_strength(fs)
}

pub(crate) fn tuple_strength(fs: &[BooleanPermutation]) -> Result<Strength> {
    let Some(first) = fs.first() else {
        return Err(Error::Dimension("need at least one function".into()));
    };
    let k = first.k();
    if fs.iter().any(|f| f.k() != k) {
        return Err(Error::Dimension(
            "functions have different input sizes".into(),
        ));
    }
    let mins: Vec<Vec<(u32, u32)>> = fs.iter().map(min_support_weights).collect();
    let mut best: Option<(usize, Vec<u32>)> = None;
    for a in 1u32..(1 << k) {
        let mut total = a.count_ones() as usize;
        let mut witness = vec![a];
        for m in &mins {
            let (w, b) = m[a as usize];
            if w == u32::MAX {
                return Err(Error::Internal("component spectrum vanished".into()));
            }
            total += w as usize;
            witness.push(b);
        }
        if best.as_ref().is_none_or(|(t, _)| total < *t) {
            best = Some((total, witness));
        }
    }
    let (total, witness) = best.expect("k >= 1 gives a nonzero a");
    Ok(Strength {
        value: total - 1,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;

    fn direct(f: &BooleanPermutation, a: u32, b: u32) -> i32 {
        (0..1u32 << f.k())
            .map(|x| {
                if ((a & x).count_ones() + (b & f.apply(x)).count_ones()).is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            })
            .sum()
    }

    #[test]
    fn walsh_matches_definition() {
        let f = BooleanPermutation::new(3, vec![3, 6, 0, 5, 7, 1, 2, 4]).unwrap();
        let w = walsh_table(&f).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(w.get(a, b), direct(&f, a, b));
            }
        }
        assert_eq!(w.get(0, 0), 8);
    }

    #[test]
    fn identity_spectrum_is_diagonal() {
        let f = BooleanPermutation::identity(4).unwrap();
        let w = walsh_table(&f).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(w.get(a, b), if a == b { 16 } else { 0 });
            }
        }
    }

    #[test]
    fn linear_spectrum_support() {
        // F(x) = x·M is supported on a = b·Mᵀ
        let m = BitMatrix::from_strs(&["1100", "0110", "0011", "0001"]).unwrap();
        let f = BooleanPermutation::from_matrix(&m).unwrap();
        let mt = BooleanPermutation::from_matrix(&m.transpose()).unwrap();
        let w = walsh_table(&f).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                let expect = if a == mt.apply(b) { 16 } else { 0 };
                assert_eq!(w.get(a, b), expect);
            }
        }
    }

    #[test]
    fn identity_pair_strength() {
        let id = BooleanPermutation::identity(3).unwrap();
        let s = cip_strength(&id, &id).unwrap();
        assert_eq!(s.value, 2);
        assert_eq!(s.witness, vec![1, 1, 1]);
    }
}
