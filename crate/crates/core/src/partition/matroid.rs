use crate::gf2::{BitMatrix, BitVector, Echelon};

/// The matroid on the columns of a GF(2) matrix: a set of column indices is
/// independent when those columns are linearly independent.
#[derive(Clone, Debug)]
pub struct ColumnMatroid {
    k: usize,
    cols: Vec<BitVector>,
}

impl ColumnMatroid {
    pub fn new(m: &BitMatrix) -> Self {
        ColumnMatroid {
            k: m.nrows(),
            cols: m.columns(),
        }
    }

    /// Number of elements (columns).
    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    /// Column height.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn column(&self, j: usize) -> &BitVector {
        &self.cols[j]
    }

    pub fn rank(&self, set: &[usize]) -> usize {
        let mut e = Echelon::new(self.k, set.len());
        set.iter().filter(|&&j| e.insert(&self.cols[j])).count()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.rank(set) == set.len()
    }

    /// All columns in the linear span of the columns in `set`, ascending.
    pub fn span_closure(&self, set: &[usize]) -> Vec<usize> {
        let mut e = Echelon::new(self.k, set.len());
        for &j in set {
            e.insert(&self.cols[j]);
        }
        (0..self.cols.len())
            .filter(|&j| e.contains(&self.cols[j]))
            .collect()
    }

    /// True iff the `k` columns in `set` form an invertible submatrix.
    pub fn is_basis(&self, set: &[usize]) -> bool {
        set.len() == self.k && self.is_independent(set)
    }
}
