use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::BooleanPermutation;
use crate::{Error, Result};

/// Largest `k` for leakage functions.
pub const MAX_LEAKAGE_BITS: usize = 12;
/// Above this many share bits `t·k` the brute-force expectation is skipped.
pub const MAX_BRUTE_FORCE_BITS: usize = 16;

/// A real-valued function on `F_2^k` with exact rational values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeakageFunction {
    k: usize,
    values: Vec<BigRational>,
}

impl LeakageFunction {
    pub fn new(k: usize, values: Vec<BigRational>) -> Result<Self> {
        if k == 0 || k > MAX_LEAKAGE_BITS {
            return Err(Error::Range(format!(
                "leakage size k = {k} outside 1..={MAX_LEAKAGE_BITS}"
            )));
        }
        if values.len() != 1 << k {
            return Err(Error::Dimension(format!(
                "expected {} values, got {}",
                1usize << k,
                values.len()
            )));
        }
        Ok(LeakageFunction { k, values })
    }

    pub fn from_integers(k: usize, values: &[i64]) -> Result<Self> {
        Self::new(
            k,
            values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    /// `x ↦ w_H(x)`.
    pub fn hamming_weight(k: usize) -> Result<Self> {
        let v: Vec<i64> = (0..1u32 << k.min(31))
            .map(|x| x.count_ones() as i64)
            .collect();
        Self::from_integers(k, &v)
    }

    /// Indicator of the single point `z`.
    pub fn point_mass(k: usize, z: u32) -> Result<Self> {
        let v: Vec<i64> = (0..1u32 << k.min(31)).map(|x| (x == z) as i64).collect();
        Self::from_integers(k, &v)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, x: u32) -> &BigRational {
        &self.values[x as usize]
    }

    /// `x ↦ self(F(x))`.
    pub fn compose(&self, f: &BooleanPermutation) -> Result<Self> {
        if f.k() != self.k {
            return Err(Error::Dimension(format!("k = {} vs k = {}", self.k, f.k())));
        }
        let values = f
            .table()
            .iter()
            .map(|&y| self.values[y as usize].clone())
            .collect();
        Ok(LeakageFunction { k: self.k, values })
    }

    /// Pointwise power `x ↦ self(x)^p`.
    pub fn pow(&self, p: u32) -> Self {
        let values = self
            .values
            .iter()
            .map(|v| num_traits::pow(v.clone(), p as usize))
            .collect();
        LeakageFunction { k: self.k, values }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let values = self.values.iter().map(|v| v * c).collect();
        LeakageFunction { k: self.k, values }
    }

    /// `None` if constant, otherwise the first point whose value differs
    /// from the value at 0.
    pub fn non_constant_witness(&self) -> Option<(u32, u32)> {
        let v0 = &self.values[0];
        self.values
            .iter()
            .position(|v| v != v0)
            .map(|z| (0, z as u32))
    }

    pub fn is_constant(&self) -> bool {
        self.non_constant_witness().is_none()
    }

    /// Values scaled by the lcm of their denominators, and that lcm.
    fn to_integers(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .values
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints = self
            .values
            .iter()
            .map(|v| v.numer() * (&den / v.denom()))
            .collect();
        (ints, den)
    }
}

fn fwht_big(v: &mut [BigInt]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let y = v[j + h].clone();
                let x = std::mem::take(&mut v[j]);
                v[j + h] = &x - &y;
                v[j] = x + y;
            }
        }
        h *= 2;
    }
}

/// `(f ⊗ g)(z) = Σ_x f(x)·g(z ⊕ x)`, exactly.
pub fn group_convolution(f: &LeakageFunction, g: &LeakageFunction) -> Result<LeakageFunction> {
    convolve_all(&[f.clone(), g.clone()])
}

/// Convolution of all functions in `ls` (one function is returned as is).
pub fn convolve_all(ls: &[LeakageFunction]) -> Result<LeakageFunction> {
    let Some(first) = ls.first() else {
        return Err(Error::Dimension("nothing to convolve".into()));
    };
    let k = first.k;
    if ls.iter().any(|l| l.k != k) {
        return Err(Error::Dimension(
            "leakage functions have different sizes".into(),
        ));
    }
    if ls.len() == 1 {
        return Ok(first.clone());
    }
    let mut den = BigInt::one();
    let mut spectrum: Vec<BigInt> = vec![BigInt::one(); 1 << k];
    for l in ls {
        let (mut ints, d) = l.to_integers();
        den *= d;
        fwht_big(&mut ints);
        for (s, v) in spectrum.iter_mut().zip(ints) {
            *s *= v;
        }
    }
    fwht_big(&mut spectrum);
    // the inverse transform divides by 2^k
    den <<= k;
    let values = spectrum
        .into_iter()
        .map(|v| BigRational::new(v, den.clone()))
        .collect();
    Ok(LeakageFunction { k, values })
}

/// Result of [`leakage_constancy_check`].
#[derive(Clone, Debug)]
pub struct ConstancyReport {
    pub constant: bool,
    /// Two points with different values when not constant.
    pub witness: Option<(u32, u32)>,
    /// `⊗_i (ℓ_i ∘ F_i)`.
    pub convolution: LeakageFunction,
    /// Whether the brute-force conditional expectation was also computed
    /// (and agreed).
    pub cross_checked: bool,
}

/// Whether `⊗_i (ℓ_i ∘ F_i)` is constant. When `t·k ≤ 16` the conditional
/// expectation `E[Π_i L_i(S_i) | Z = z]` is also summed directly over all
/// share tuples and compared with `2^{−k(t−1)}` times the convolution.
pub fn leakage_constancy_check(
    ls: &[LeakageFunction],
    fs: &[BooleanPermutation],
) -> Result<ConstancyReport> {
    if ls.len() != fs.len() || ls.is_empty() {
        return Err(Error::Dimension(format!(
            "{} leakage functions for {} encodings",
            ls.len(),
            fs.len()
        )));
    }
    let composed: Vec<LeakageFunction> = ls
        .iter()
        .zip(fs)
        .map(|(l, f)| l.compose(f))
        .collect::<Result<_>>()?;
    let conv = convolve_all(&composed)?;
    let k = conv.k;
    let t = composed.len();
    let cross_checked = t * k <= MAX_BRUTE_FORCE_BITS;
    if cross_checked {
        let expect = conditional_expectation(&composed);
        let scale = BigRational::new(BigInt::one(), BigInt::one() << (k * (t - 1)));
        if conv.scale(&scale) != expect {
            return Err(Error::Internal(
                "convolution disagrees with the direct conditional expectation".into(),
            ));
        }
    }
    let witness = conv.non_constant_witness();
    Ok(ConstancyReport {
        constant: witness.is_none(),
        witness,
        convolution: conv,
        cross_checked,
    })
}

/// `z ↦ E[Π_i L_i(S_i) | S_0 ⊕ … ⊕ S_{t−1} = z]` with uniform shares.
fn conditional_expectation(ls: &[LeakageFunction]) -> LeakageFunction {
    let k = ls[0].k;
    let t = ls.len();
    let size = 1usize << k;
    let tuples = 1usize << (k * (t - 1));
    let values = (0..size)
        .map(|z| {
            let mut acc = BigRational::zero();
            for m in 0..tuples {
                let mut s0 = z;
                let mut prod = BigRational::one();
                for (i, l) in ls[1..].iter().enumerate() {
                    let s = (m >> (i * k)) & (size - 1);
                    s0 ^= s;
                    prod *= &l.values[s];
                }
                acc += prod * &ls[0].values[s0];
            }
            acc / BigRational::from_integer(tuples.into())
        })
        .collect();
    LeakageFunction { k, values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(f: &LeakageFunction, g: &LeakageFunction) -> Vec<BigRational> {
        let n = 1usize << f.k;
        (0..n)
            .map(|z| (0..n).map(|x| &f.values[x] * &g.values[z ^ x]).sum())
            .collect()
    }

    #[test]
    fn point_mass_is_neutral() {
        let w = LeakageFunction::hamming_weight(3).unwrap();
        let e = LeakageFunction::point_mass(3, 0).unwrap();
        assert_eq!(group_convolution(&e, &w).unwrap(), w);
    }

    #[test]
    fn matches_direct_sum_with_fractions() {
        let f = LeakageFunction::new(
            2,
            vec![
                BigRational::new(1.into(), 3.into()),
                BigRational::new((-1).into(), 2.into()),
                BigRational::from_integer(2.into()),
                BigRational::new(5.into(), 7.into()),
            ],
        )
        .unwrap();
        let g = LeakageFunction::hamming_weight(2).unwrap().pow(2);
        assert_eq!(group_convolution(&f, &g).unwrap().values, direct(&f, &g));
    }

    #[test]
    fn unmasked_weights_leak() {
        let w = LeakageFunction::hamming_weight(3).unwrap();
        let id = BooleanPermutation::identity(3).unwrap();
        let r = leakage_constancy_check(&[w.clone(), w.clone(), w], &[id.clone(), id.clone(), id])
            .unwrap();
        assert!(!r.constant);
        assert!(r.cross_checked);
    }

    #[test]
    fn single_share_constancy_follows_the_function() {
        let id = BooleanPermutation::identity(2).unwrap();
        let c = LeakageFunction::from_integers(2, &[4, 4, 4, 4]).unwrap();
        assert!(
            leakage_constancy_check(&[c], std::slice::from_ref(&id))
                .unwrap()
                .constant
        );
        let w = LeakageFunction::hamming_weight(2).unwrap();
        assert!(!leakage_constancy_check(&[w], &[id]).unwrap().constant);
    }
}
