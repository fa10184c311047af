use crate::code::LinearCode;
use crate::gf2::{BitMatrix, BitVector};
use crate::{Error, Result};

/// Inputs of the building-up construction over a base `G = (A_1 | … | A_t)`.
#[derive(Debug, Clone)]
pub struct BuildUpChoice {
    pub base: LinearCode,
    pub t: usize,
    /// `x_j`, one length-`k` vector per block.
    pub x: Vec<BitVector>,
    /// `y[j]` holds `y_{1j}, …, y_{kj}` as a length-`k` vector.
    pub y: Vec<BitVector>,
}

/// Splits a `[tk, k]` generator into its `t` consecutive `k×k` blocks.
pub(crate) fn blocks(c: &LinearCode, t: usize) -> Result<Vec<BitMatrix>> {
    let (n, k) = (c.n(), c.k());
    if t == 0 || n != t * k {
        return Err(Error::Dimension(format!(
            "length {n} is not t·k for t = {t}, k = {k}"
        )));
    }
    Ok((0..t)
        .map(|j| {
            c.generator()
                .select_columns(&(j * k..(j + 1) * k).collect::<Vec<_>>())
        })
        .collect())
}

/// The `[t(k+1), k+1]` code whose generator has first row
/// `(z_1 x_1 | … | z_t x_t)` and row `i + 1` equal to
/// `(y_{i1} A_1(r_i) | … | y_{it} A_t(r_i))`, with `x_j = c_j·A_j` and
/// `z_j = 1 + c_j·y_j`.
pub fn build_up(choice: &BuildUpChoice) -> Result<LinearCode> {
    let k = choice.base.k();
    let t = choice.t;
    let a = blocks(&choice.base, t)?;
    if choice.x.len() != t || choice.y.len() != t {
        return Err(Error::Dimension(format!(
            "need {t} x-vectors and {t} y-columns"
        )));
    }
    if let Some(v) = choice.x.iter().chain(&choice.y).find(|v| v.len() != k) {
        return Err(Error::Dimension(format!(
            "vector of length {} where {k} is needed",
            v.len()
        )));
    }

    let mut g = BitMatrix::zeros(k + 1, t * (k + 1));
    for (j, aj) in a.iter().enumerate() {
        let inv = aj
            .invert()?
            .ok_or_else(|| Error::Precondition(format!("block {j} of the base is singular")))?;
        let c = inv.left_mul_vec(&choice.x[j]);
        let z = !c.dot(&choice.y[j]);
        let off = j * (k + 1);
        g.set(0, off, z);
        for col in 0..k {
            g.set(0, off + 1 + col, choice.x[j].get(col));
        }
        for i in 0..k {
            g.set(i + 1, off, choice.y[j].get(i));
            for col in 0..k {
                g.set(i + 1, off + 1 + col, aj.get(i, col));
            }
        }
    }
    LinearCode::new(g)
}

/// Deletes row `row` and, in each block, the first column that lies in the
/// span of the other columns of that block.
pub fn subtract(c: &LinearCode, t: usize, row: usize) -> Result<LinearCode> {
    let k = c.k();
    if k < 2 {
        return Err(Error::Precondition("subtracting needs k >= 2".into()));
    }
    if row >= k {
        return Err(Error::Range(format!("row {row} out of range for k = {k}")));
    }
    let a = blocks(c, t)?;
    if let Some(j) = a.iter().position(|m| !m.is_invertible()) {
        return Err(Error::Precondition(format!("block {j} is singular")));
    }
    let keep_rows: Vec<usize> = (0..k).filter(|&i| i != row).collect();
    let mut keep_cols = Vec::with_capacity(t * (k - 1));
    for (j, aj) in a.iter().enumerate() {
        let reduced = aj.select_rows(&keep_rows);
        let drop = (0..k)
            .find(|&col| {
                let rest: Vec<usize> = (0..k).filter(|&x| x != col).collect();
                reduced.select_columns(&rest).rank() == k - 1
            })
            .ok_or_else(|| Error::Internal(format!("no dependent column in block {j}")))?;
        keep_cols.extend((0..k).filter(|&x| x != drop).map(|x| j * k + x));
    }
    let g = c
        .generator()
        .select_rows(&keep_rows)
        .select_columns(&keep_cols);
    LinearCode::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::t_cis_partition;

    fn bits(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn all_zero_choice() {
        let base = LinearCode::from_strs(&["101010", "010101"]).unwrap();
        let choice = BuildUpChoice {
            base,
            t: 3,
            x: vec![bits("00"); 3],
            y: vec![bits("00"); 3],
        };
        let c = build_up(&choice).unwrap();
        let want = BitMatrix::from_strs(&["100100100", "010010010", "001001001"]).unwrap();
        assert_eq!(c.generator(), &want);
        assert!(t_cis_partition(&c, 3).unwrap().is_partition());
    }

    #[test]
    fn identity_blocks_subtract() {
        let c = LinearCode::from_strs(&["100100100", "010010010", "001001001"]).unwrap();
        let s = subtract(&c, 3, 2).unwrap();
        assert_eq!(
            s.generator(),
            &BitMatrix::from_strs(&["101010", "010101"]).unwrap()
        );
    }

    #[test]
    fn singular_base_block() {
        let base = LinearCode::from_strs(&["1011", "0111"]).unwrap();
        let choice = BuildUpChoice {
            base,
            t: 2,
            x: vec![bits("00"); 2],
            y: vec![bits("00"); 2],
        };
        assert!(matches!(build_up(&choice), Err(Error::Precondition(_))));
    }
}
