use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Distance bounds for a t-CIS `[tk, k]` code.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub k: usize,
    pub t: usize,
    /// Every information set meets every nonzero codeword.
    pub trivial_lower: usize,
    pub singleton_upper: usize,
    pub plotkin_upper: BigUint,
    /// Root of `H(δ) = 1/t` on `(0, 1/2)`.
    pub gv_delta: f64,
}

impl Bounds {
    /// The smaller of the Singleton and Plotkin bounds.
    pub fn upper(&self) -> usize {
        let singleton = BigUint::from(self.singleton_upper);
        if self.plotkin_upper < singleton {
            self.plotkin_upper.iter_u64_digits().next().unwrap_or(0) as usize
        } else {
            self.singleton_upper
        }
    }
}

pub fn bounds(k: usize, t: usize) -> Result<Bounds> {
    if k == 0 || t < 2 {
        return Err(Error::Precondition(format!(
            "need k >= 1 and t >= 2, got k = {k}, t = {t}"
        )));
    }
    // MDS codes of rate 1/t with tk > 3 do not exist
    let singleton_upper = if t * k > 3 {
        (t - 1) * k
    } else {
        (t - 1) * k + 1
    };
    let pow = BigUint::one() << (k - 1);
    let plotkin_upper = BigUint::from(k * t) * &pow / ((pow << 1u32) - 1u32);
    Ok(Bounds {
        k,
        t,
        trivial_lower: t,
        singleton_upper,
        plotkin_upper,
        gv_delta: entropy_root(1.0 / t as f64),
    })
}

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

fn entropy_root(target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `Σ_{j=2}^{d} Σ_{1 ≤ r+s ≤ j} C(k, j−r−s)·C(k, r)·C(k, s)·(r+s)·2^{k(2k−2)}`.
pub fn m_count(k: usize, d: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if d > 3 * k {
        return Err(Error::Range(format!("d = {d} exceeds 3k = {}", 3 * k)));
    }
    let mut sum = BigUint::zero();
    for j in 2..=d {
        for r in 0..=j {
            for s in 0..=j - r {
                if r + s == 0 {
                    continue;
                }
                sum += triple_binomial(k, j, r, s) * BigUint::from(r + s);
            }
        }
    }
    Ok(sum << (k * (2 * k - 2)))
}

/// `C(k, j−r−s)·C(k, r)·C(k, s)`, zero when `r + s > j`.
fn triple_binomial(k: usize, j: usize, r: usize, s: usize) -> BigUint {
    if r + s > j {
        return BigUint::zero();
    }
    let c = |a: usize| {
        if a > k {
            BigUint::zero()
        } else {
            binomial(BigUint::from(k), BigUint::from(a))
        }
    };
    c(j - r - s) * c(r) * c(s)
}
