use std::fmt;

use super::vector::WORD_BITS;
use crate::{Error, Result};

/// Largest degree accepted for a polynomial.
pub const MAX_POLY_DEGREE: usize = 4096;

/// Polynomial over GF(2), dense coefficients, bit `i` is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    words: Vec<u64>,
    degree: Option<usize>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly {
            words: Vec::new(),
            degree: None,
        }
    }

    pub fn one() -> Self {
        Self::monomial(0).expect("degree 0 is in range")
    }

    pub fn monomial(deg: usize) -> Result<Self> {
        Self::from_exponents(&[deg])
    }

    pub fn from_exponents(exps: &[usize]) -> Result<Self> {
        let mut words = Vec::new();
        for &e in exps {
            if e > MAX_POLY_DEGREE {
                return Err(Error::Range(format!(
                    "degree {e} exceeds the maximum {MAX_POLY_DEGREE}"
                )));
            }
            let w = e / WORD_BITS;
            if words.len() <= w {
                words.resize(w + 1, 0);
            }
            words[w] ^= 1u64 << (e % WORD_BITS);
        }
        Ok(Self::normalized(words))
    }

    /// Coefficients from integer bits: bit `i` of `value` is the coefficient of `x^i`.
    pub fn from_u64(value: u64) -> Self {
        Self::normalized(vec![value])
    }

    /// `x^m - 1` (equal to `x^m + 1` over GF(2)).
    pub fn x_pow_minus_one(m: usize) -> Result<Self> {
        if m == 0 {
            return Ok(Self::zero());
        }
        Self::from_exponents(&[m, 0])
    }

    fn normalized(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        let degree = words
            .last()
            .map(|w| (words.len() - 1) * WORD_BITS + (63 - w.leading_zeros() as usize));
        Gf2Poly { words, degree }
    }

    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.degree.is_none()
    }

    pub fn is_one(&self) -> bool {
        self.degree == Some(0)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
    }

    pub fn exponents(&self) -> Vec<usize> {
        match self.degree {
            None => Vec::new(),
            Some(d) => (0..=d).filter(|&i| self.coeff(i)).collect(),
        }
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| {
                self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0)
            })
            .collect();
        Self::normalized(words)
    }

    pub fn mul(&self, other: &Gf2Poly) -> Result<Gf2Poly> {
        let (Some(da), Some(db)) = (self.degree, other.degree) else {
            return Ok(Self::zero());
        };
        if da + db > MAX_POLY_DEGREE {
            return Err(Error::Range(format!(
                "product degree {} exceeds the maximum {MAX_POLY_DEGREE}",
                da + db
            )));
        }
        let mut acc = vec![0u64; (da + db) / WORD_BITS + 1];
        for e in other.exponents() {
            xor_shifted(&mut acc, &self.words, e);
        }
        Ok(Self::normalized(acc))
    }

    /// Euclidean division, `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Gf2Poly) -> Result<(Gf2Poly, Gf2Poly)> {
        let Some(dd) = divisor.degree else {
            return Err(Error::Precondition(
                "division by the zero polynomial".into(),
            ));
        };
        let mut rem = self.words.clone();
        let mut quot = vec![0u64; self.words.len().max(1)];
        let mut r = Self::normalized(rem.clone());
        while let Some(dr) = r.degree {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            quot[shift / WORD_BITS] ^= 1u64 << (shift % WORD_BITS);
            xor_shifted(&mut rem, &divisor.words, shift);
            r = Self::normalized(rem.clone());
        }
        Ok((Self::normalized(quot), r))
    }

    pub fn rem(&self, divisor: &Gf2Poly) -> Result<Gf2Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn divides(&self, other: &Gf2Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Value of the polynomial at `x = 1`, i.e. the parity of its weight.
    pub fn eval_at_one(&self) -> bool {
        self.words.iter().map(|w| w.count_ones()).sum::<u32>() & 1 == 1
    }
}

fn xor_shifted(acc: &mut Vec<u64>, src: &[u64], shift: usize) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    let needed = src.len() + ws + 1;
    if acc.len() < needed {
        acc.resize(needed, 0);
    }
    for (i, &w) in src.iter().enumerate() {
        acc[i + ws] ^= w << bs;
        if bs != 0 {
            acc[i + ws + 1] ^= w >> (WORD_BITS - bs);
        }
    }
}

/// Monic gcd of two polynomials; an error when both are zero.
pub fn poly_gcd(p: &Gf2Poly, q: &Gf2Poly) -> Result<Gf2Poly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    // over GF(2) every nonzero polynomial is already monic
    Ok(a)
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(exps: &[usize]) -> Gf2Poly {
        Gf2Poly::from_exponents(exps).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let a = p(&[3, 1, 0]);
        assert_eq!(poly_gcd(&a, &Gf2Poly::zero()).unwrap(), a);
        assert_eq!(poly_gcd(&p(&[1, 0]), &p(&[2, 0])).unwrap(), p(&[1, 0]));
        // x^3+x+1 divides x^7+1
        assert_eq!(poly_gcd(&a, &p(&[7, 0])).unwrap(), a);
        assert_eq!(
            poly_gcd(&Gf2Poly::zero(), &Gf2Poly::zero()),
            Err(Error::UndefinedGcd)
        );
    }

    #[test]
    fn division_identity() {
        let a = p(&[130, 64, 3, 0]);
        let b = p(&[65, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.degree().is_none_or(|d| d < 65));
        assert_eq!(q.mul(&b).unwrap().add(&r), a);
    }

    #[test]
    fn degree_cap() {
        assert!(Gf2Poly::monomial(4096).is_ok());
        assert!(Gf2Poly::monomial(4097).is_err());
        assert!(p(&[3000]).mul(&p(&[2000])).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[3, 1, 0]).to_string(), "x^3+x+1");
        assert_eq!(Gf2Poly::zero().to_string(), "0");
        assert_eq!(Gf2Poly::from_u64(0b110).to_string(), "x^2+x");
    }
}
