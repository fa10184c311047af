use std::fmt;

use crate::gf2::BitMatrix;
use crate::{Error, Result};

/// Matrix over Z4, one byte per entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z4Matrix {
    nrows: usize,
    ncols: usize,
    data: Vec<u8>,
}

impl Z4Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        assert!(nrows > 0 && ncols > 0, "matrix dimensions must be positive");
        Z4Matrix {
            nrows,
            ncols,
            data: vec![0; nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::Dimension("no rows".into()));
        };
        let ncols = first.len();
        if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension(
                "rows must be nonempty and of equal length".into(),
            ));
        }
        if let Some(v) = rows.iter().flatten().find(|&&v| v > 3) {
            return Err(Error::Range(format!("entry {v} is not in Z4")));
        }
        Ok(Z4Matrix {
            nrows: rows.len(),
            ncols,
            data: rows.concat(),
        })
    }

    /// Rows of digits 0..=3; whitespace inside a row is ignored.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let rows: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0'..='3' => Ok(c as u8 - b'0'),
                        _ => Err(Error::Range(format!("'{c}' is not a Z4 digit"))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(&rows)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        assert!(v < 4, "entry {v} is not in Z4");
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn transpose(&self) -> Z4Matrix {
        let mut t = Z4Matrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Z4Matrix) -> Result<Z4Matrix> {
        if self.ncols != rhs.nrows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let mut out = Z4Matrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for j in 0..rhs.ncols {
                let s: u32 = (0..self.ncols)
                    .map(|l| self.get(i, l) as u32 * rhs.get(l, j) as u32)
                    .sum();
                out.set(i, j, (s % 4) as u8);
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `u·M` mod 4.
    pub fn left_mul_vec(&self, u: &[u8]) -> Vec<u8> {
        assert_eq!(u.len(), self.nrows);
        let mut out = vec![0u8; self.ncols];
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(self.row(i)) {
                *o = (*o + ui * m) & 3;
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Z4Matrix {
        let mut out = Z4Matrix::zeros(self.nrows, cols.len());
        for i in 0..self.nrows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    /// Reduction mod 2.
    pub fn mod2(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.nrows, self.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                m.set(i, j, self.get(i, j) & 1 == 1);
            }
        }
        m
    }
}

/// Inverse over Z4 by Gauss–Jordan elimination with odd (unit) pivots.
/// `Ok(None)` when the determinant is even.
pub fn z4_invert(m: &Z4Matrix) -> Result<Option<Z4Matrix>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "cannot invert a {}x{} matrix",
            m.nrows, m.ncols
        )));
    }
    let n = m.nrows;
    let mut a = m.clone();
    let mut inv = Z4Matrix::identity(n);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a.get(i, c) & 1 == 1) else {
            return Ok(None);
        };
        swap_rows(&mut a, c, p);
        swap_rows(&mut inv, c, p);
        // odd units are self-inverse mod 4
        let u = a.get(c, c);
        scale_row(&mut a, c, u);
        scale_row(&mut inv, c, u);
        for i in 0..n {
            let f = a.get(i, c);
            if i != c && f != 0 {
                sub_row(&mut a, c, i, f);
                sub_row(&mut inv, c, i, f);
            }
        }
    }
    Ok(Some(inv))
}

fn swap_rows(m: &mut Z4Matrix, a: usize, b: usize) {
    if a != b {
        for j in 0..m.ncols {
            m.data.swap(a * m.ncols + j, b * m.ncols + j);
        }
    }
}

fn scale_row(m: &mut Z4Matrix, r: usize, u: u8) {
    for j in 0..m.ncols {
        let v = m.get(r, j);
        m.set(r, j, (v * u) & 3);
    }
}

/// row[dst] -= f · row[src]
fn sub_row(m: &mut Z4Matrix, src: usize, dst: usize, f: u8) {
    for j in 0..m.ncols {
        let v = (m.get(dst, j) + 12 - f * m.get(src, j)) & 3;
        m.set(dst, j, v);
    }
}

impl fmt::Display for Z4Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            if i > 0 {
                f.write_str("\n")?;
            }
            for &v in self.row(i) {
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Z4Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Z4Matrix {}x{}", self.nrows, self.ncols)?;
        write!(f, "{self}")
    }
}
