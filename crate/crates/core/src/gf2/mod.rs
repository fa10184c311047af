//! Exact linear algebra over GF(2).
//!
//! Vectors and matrices are packed into 64-bit words. Coordinate `i` of a
//! vector is bit `i`, and the leftmost printed character is coordinate 0.
//! Linear maps on `F_2^k` act on row vectors from the right (`x ↦ x·M`)
//! unless a function name says otherwise.

mod matrix;
mod poly;
mod vector;

pub use matrix::{solve_in_span, BitMatrix, Echelon};
pub use poly::{poly_gcd, Gf2Poly, MAX_POLY_DEGREE};
pub use vector::BitVector;

/// Rank of a matrix over GF(2).
pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

/// Inverse over GF(2); `Ok(None)` for a singular matrix.
pub fn invert(m: &BitMatrix) -> crate::Result<Option<BitMatrix>> {
    m.invert()
}

/// Applies the row-vector map `x ↦ x·m` to an integer-packed vector.
/// Requires `m.nrows() <= 64` and `m.ncols() <= 64`.
#[inline]
pub(crate) fn apply_row_map(rows: &[u64], x: u64) -> u64 {
    let mut out = 0;
    let mut rest = x;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        out ^= rows[i];
        rest &= rest - 1;
    }
    out
}

/// Largest `k` for which [`general_linear_group`] lists `GL(k, 2)`.
pub const MAX_GL_LIST_DIM: usize = 4;

/// All invertible `k×k` matrices over GF(2), ordered by their rows as integers.
pub fn general_linear_group(k: usize) -> crate::Result<Vec<BitMatrix>> {
    if k == 0 || k > MAX_GL_LIST_DIM {
        return Err(crate::Error::Infeasible(format!(
            "listing GL({k}, 2) is limited to 1 <= k <= {MAX_GL_LIST_DIM}"
        )));
    }
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(k);
    gl_rows(k, &mut rows, &mut out);
    Ok(out)
}

fn gl_rows(k: usize, rows: &mut Vec<u64>, out: &mut Vec<BitMatrix>) {
    if rows.len() == k {
        out.push(BitMatrix::from_u64_rows(k, rows));
        return;
    }
    // span of the rows chosen so far, as a membership table
    let mut span = vec![false; 1 << k];
    for m in 0u64..(1 << rows.len()) {
        span[apply_row_map(rows, m) as usize] = true;
    }
    for r in 1u64..(1 << k) {
        if !span[r as usize] {
            rows.push(r);
            gl_rows(k, rows, out);
            rows.pop();
        }
    }
}
