use crate::code::LinearCode;
use crate::gf2::{poly_gcd, BitMatrix, Gf2Poly};
use crate::{Error, Result};

/// How the digits of an integer token map to polynomial coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BitOrder {
    /// The leftmost printed bit is the highest-degree coefficient.
    #[default]
    HighFirst,
    /// The leftmost printed bit is the constant term.
    LowFirst,
}

/// One-generator quasi-cyclic code: the row `(a_1, …, a_t)` over `F_2[x]/(x^m − 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QcSpec {
    t: usize,
    m: usize,
    rows: Vec<Gf2Poly>,
}

impl QcSpec {
    pub fn new(m: usize, rows: Vec<Gf2Poly>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition(
                "circulant size must be positive".into(),
            ));
        }
        if rows.len() < 2 {
            return Err(Error::Precondition(format!(
                "need at least 2 blocks, got {}",
                rows.len()
            )));
        }
        if let Some((i, a)) = rows
            .iter()
            .enumerate()
            .find(|(_, a)| a.degree().is_some_and(|d| d >= m))
        {
            return Err(Error::Range(format!(
                "block {i} has degree {} >= m = {m}",
                a.degree().unwrap_or(0)
            )));
        }
        if rows.iter().all(Gf2Poly::is_zero) {
            return Err(Error::Degenerate(
                "all polynomials in the generating row are zero".into(),
            ));
        }
        Ok(QcSpec {
            t: rows.len(),
            m,
            rows,
        })
    }

    /// Parses whitespace- or comma-separated tokens, each a binary string or
    /// a `0o`-prefixed octal number.
    pub fn parse_row(m: usize, text: &str, order: BitOrder) -> Result<Self> {
        let rows = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|tok| parse_poly_token(tok, order))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, rows)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[Gf2Poly] {
        &self.rows
    }
}

/// A polynomial from a binary string or a `0o`-prefixed octal token.
pub fn parse_poly_token(tok: &str, order: BitOrder) -> Result<Gf2Poly> {
    let bits: String = if let Some(oct) = tok.strip_prefix("0o") {
        let value = u64::from_str_radix(oct, 8)
            .map_err(|e| Error::Range(format!("bad octal token {tok:?}: {e}")))?;
        format!("{value:b}")
    } else if !tok.is_empty() && tok.bytes().all(|b| b == b'0' || b == b'1') {
        tok.to_string()
    } else {
        return Err(Error::Range(format!(
            "token {tok:?} is neither binary nor 0o-octal"
        )));
    };
    let len = bits.len();
    let exps: Vec<usize> = bits
        .bytes()
        .enumerate()
        .filter(|&(_, b)| b == b'1')
        .map(|(i, _)| match order {
            BitOrder::HighFirst => len - 1 - i,
            BitOrder::LowFirst => i,
        })
        .collect();
    Gf2Poly::from_exponents(&exps)
}

#[derive(Debug, Clone)]
pub struct QcReport {
    /// `gcd(a_i, x^m − 1)` for each block.
    pub gcds: Vec<Gf2Poly>,
}

impl QcReport {
    /// All blocks coprime with `x^m − 1`, which makes every circulant
    /// invertible and the code t-CIS.
    pub fn all_coprime(&self) -> bool {
        self.gcds.iter().all(Gf2Poly::is_one)
    }
}

/// Generator with `m` rows; row `r` of block `i` holds the coefficients of
/// `x^r·a_i mod (x^m − 1)` in increasing degree.
pub fn qc_build(spec: &QcSpec) -> Result<(LinearCode, QcReport)> {
    let (t, m) = (spec.t, spec.m);
    let mut g = BitMatrix::zeros(m, t * m);
    for (i, a) in spec.rows.iter().enumerate() {
        for e in a.exponents() {
            for r in 0..m {
                g.set(r, i * m + (e + r) % m, true);
            }
        }
    }
    let rank = g.rank();
    if rank < m {
        return Err(Error::Degenerate(format!(
            "generator has rank {rank} < m = {m}"
        )));
    }
    let report = QcReport {
        gcds: gcds_with_x_pow_minus_one(spec, m)?,
    };
    Ok((LinearCode::new(g)?, report))
}

/// `gcd(a_i, x^e − 1)` for each block of the row.
pub fn gcds_with_x_pow_minus_one(spec: &QcSpec, e: usize) -> Result<Vec<Gf2Poly>> {
    let modulus = Gf2Poly::x_pow_minus_one(e)?;
    spec.rows
        .iter()
        .map(|a| {
            if a.is_zero() {
                Ok(modulus.clone())
            } else {
                poly_gcd(a, &modulus)
            }
        })
        .collect()
}
