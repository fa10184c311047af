use std::fmt;

use super::vector::{words_for, BitVector, WORD_BITS};
use crate::{Error, Result};

/// Dense GF(2) matrix, packed row-major in 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    nrows: usize,
    ncols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        assert!(
            nrows > 0 && ncols > 0,
            "matrices have at least one row and column"
        );
        let stride = words_for(ncols);
        BitMatrix {
            nrows,
            ncols,
            stride,
            data: vec![0; nrows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVector]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::Dimension("matrix needs at least one row".into()))?;
        let ncols = first.len();
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {ncols}",
                    r.len()
                )));
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    pub fn from_columns(cols: &[BitVector]) -> Result<Self> {
        let first = cols
            .first()
            .ok_or_else(|| Error::Dimension("matrix needs at least one column".into()))?;
        let nrows = first.len();
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != nrows {
                return Err(Error::Dimension(format!(
                    "column {j} has length {}, expected {nrows}",
                    c.len()
                )));
            }
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Parses rows of `0`/`1` characters; whitespace inside a row is ignored.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let rows: Vec<BitVector> = rows.iter().map(|r| r.parse()).collect::<Result<_>>()?;
        Self::from_rows(&rows)
    }

    /// Rows given as integers, bit `j` of `rows[i]` is entry `(i, j)`.
    pub fn from_u64_rows(ncols: usize, rows: &[u64]) -> Self {
        assert!(ncols <= WORD_BITS);
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, &r) in rows.iter().enumerate() {
            m.data[i * m.stride] = if ncols == 64 {
                r
            } else {
                r & ((1u64 << ncols) - 1)
            };
        }
        m
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.nrows && j < self.ncols);
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        assert!(i < self.nrows && j < self.ncols);
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        assert!(i < self.nrows);
        BitVector::from_words(self.ncols, self.row_words(i).to_vec())
    }

    pub fn rows(&self) -> Vec<BitVector> {
        (0..self.nrows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> BitVector {
        assert!(j < self.ncols);
        let mut c = BitVector::zeros(self.nrows);
        for i in 0..self.nrows {
            if self.get(i, j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn columns(&self) -> Vec<BitVector> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    /// Row `i` as an integer; only valid when `ncols <= 64`.
    pub fn row_u64(&self, i: usize) -> u64 {
        assert!(self.ncols <= WORD_BITS);
        self.data[i * self.stride]
    }

    /// Column `j` as an integer (bit `i` is row `i`); requires `nrows <= 64`.
    pub fn column_u64(&self, j: usize) -> u64 {
        assert!(self.nrows <= WORD_BITS);
        (0..self.nrows).fold(0u64, |acc, i| acc | ((self.get(i, j) as u64) << i))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        for w in 0..self.stride {
            let v = self.data[src * self.stride + w];
            self.data[dst * self.stride + w] ^= v;
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in self.row(i).iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.ncols != rhs.nrows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let mut out = BitMatrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for l in self.row(i).iter_ones() {
                for w in 0..out.stride {
                    out.data[i * out.stride + w] ^= rhs.data[l * rhs.stride + w];
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `v · self`.
    pub fn left_mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.nrows);
        let mut out = BitVector::zeros(self.ncols);
        for i in v.iter_ones() {
            for (o, r) in out.words_mut().iter_mut().zip(self.row_words(i)) {
                *o ^= r;
            }
        }
        out
    }

    /// Matrix times column vector, `self · v`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.ncols);
        let mut out = BitVector::zeros(self.nrows);
        for i in 0..self.nrows {
            let parity: u32 = self
                .row_words(i)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if parity & 1 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        assert!(!cols.is_empty());
        let mut out = BitMatrix::zeros(self.nrows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.nrows {
                if self.get(i, j) {
                    out.set(i, jj, true);
                }
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        assert!(!rows.is_empty());
        let mut out = BitMatrix::zeros(rows.len(), self.ncols);
        for (ii, &i) in rows.iter().enumerate() {
            out.row_words_mut(ii).copy_from_slice(self.row_words(i));
        }
        out
    }

    /// Horizontal concatenation `(self | rhs)`.
    pub fn hcat(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.nrows != rhs.nrows {
            return Err(Error::Dimension(format!(
                "cannot concatenate {} rows with {} rows",
                self.nrows, rhs.nrows
            )));
        }
        let mut out = BitMatrix::zeros(self.nrows, self.ncols + rhs.ncols);
        for i in 0..self.nrows {
            for j in self.row(i).iter_ones() {
                out.set(i, j, true);
            }
            for j in rhs.row(i).iter_ones() {
                out.set(i, self.ncols + j, true);
            }
        }
        Ok(out)
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns. Pivots are chosen as the first row (from the current rank
    /// position down) with the column bit set, so the result is canonical.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let Some(p) = (r..self.nrows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.nrows {
                if i != r && self.get(i, c) {
                    self.add_row(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse over GF(2). `Ok(None)` when the matrix is singular.
    pub fn invert(&self) -> Result<Option<BitMatrix>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "cannot invert a {}x{} matrix",
                self.nrows, self.ncols
            )));
        }
        let n = self.nrows;
        let mut a = self.clone();
        let mut inv = BitMatrix::identity(n);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| a.get(i, c)) else {
                return Ok(None);
            };
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            for i in 0..n {
                if i != c && a.get(i, c) {
                    a.add_row(c, i);
                    inv.add_row(c, i);
                }
            }
        }
        Ok(Some(inv))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.nrows
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.nrows, self.ncols)?;
        write!(f, "{self}")
    }
}

/// Incrementally built echelon basis that remembers, for every stored
/// vector, which inserted vectors it is a combination of.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, BitVector, BitVector)>, // (pivot, reduced vector, combination tag)
    inserted: usize,
    capacity: usize,
}

impl Echelon {
    /// `dim` is the ambient vector length, `capacity` the maximum number of
    /// vectors that will be inserted (it sizes the combination tags).
    pub fn new(dim: usize, capacity: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            inserted: 0,
            capacity: capacity.max(1),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_tagged(&self, v: &BitVector) -> (BitVector, BitVector) {
        assert_eq!(v.len(), self.dim);
        let mut r = v.clone();
        let mut tag = BitVector::zeros(self.capacity);
        for (p, row, t) in &self.rows {
            if r.get(*p) {
                r.xor_assign(row);
                tag.xor_assign(t);
            }
        }
        (r, tag)
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let mut r = v.clone();
        for (p, row, _) in &self.rows {
            if r.get(*p) {
                r.xor_assign(row);
            }
        }
        r.is_zero()
    }

    /// Inserts `v`; returns false (and leaves the basis unchanged) if `v` is
    /// already in the span.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        assert!(self.inserted < self.capacity, "echelon capacity exceeded");
        let (r, mut tag) = self.reduce_tagged(v);
        let Some(p) = r.first_one() else {
            return false;
        };
        tag.flip(self.inserted);
        self.inserted += 1;
        // keep the stored rows fully reduced on their pivots
        for (_, row, t) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&r);
                t.xor_assign(&tag);
            }
        }
        self.rows.push((p, r, tag));
        true
    }

    /// Expresses `v` over the inserted vectors (indexed by insertion order).
    pub fn solve(&self, v: &BitVector) -> Option<BitVector> {
        let (r, tag) = self.reduce_tagged(v);
        if r.is_zero() {
            Some(tag.slice(0, self.inserted.max(1)))
        } else {
            None
        }
    }
}

/// Expresses `target` as a combination of the given independent columns.
/// Returns `Ok(None)` when the target lies outside their span.
pub fn solve_in_span(basis: &[BitVector], target: &BitVector) -> Result<Option<BitVector>> {
    if basis.is_empty() {
        return Err(Error::Dimension("empty basis".into()));
    }
    let dim = target.len();
    let mut e = Echelon::new(dim, basis.len());
    for (i, b) in basis.iter().enumerate() {
        if b.len() != dim {
            return Err(Error::Dimension(format!(
                "basis column {i} has length {}, target has {dim}",
                b.len()
            )));
        }
        if !e.insert(b) {
            return Err(Error::Precondition(format!(
                "basis columns are dependent (column {i})"
            )));
        }
    }
    Ok(e.solve(target).map(|c| c.slice(0, basis.len())))
}
