use std::collections::{BTreeMap, HashSet};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use super::{canonical_form, enumerate_cat, CanonicalCode, Effort};
use crate::code::LinearCode;
use crate::gf2::{BitMatrix, BitVector};
use crate::partition::{t_cis_partition, PartitionOutcome};
use crate::{Error, Result};

/// How candidate codes are generated before duplicate elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Extend every `(t−1)`-CIS class by one invertible block, taken up to
    /// column permutation.
    AppendBlock,
    /// Put `I_k` in front of every Cat representative.
    AppendCat,
}

#[derive(Debug, Clone)]
pub struct ClassifiedCode {
    /// Generator in block form: `t` consecutive information sets.
    pub code: LinearCode,
    pub canonical: CanonicalCode,
    pub min_distance: usize,
    pub self_orthogonal: bool,
}

/// Per-distance class counts for one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTableRow {
    pub length: usize,
    /// `d ↦ (self-orthogonal, not self-orthogonal)`
    pub cells: BTreeMap<usize, (usize, usize)>,
    pub total: usize,
}

impl ClassTableRow {
    fn from_codes(length: usize, codes: &[ClassifiedCode]) -> Self {
        let mut cells = BTreeMap::new();
        for c in codes {
            let cell: &mut (usize, usize) = cells.entry(c.min_distance).or_default();
            if c.self_orthogonal {
                cell.0 += 1;
            } else {
                cell.1 += 1;
            }
        }
        ClassTableRow {
            length,
            cells,
            total: codes.len(),
        }
    }

    pub fn count(&self, d: usize) -> usize {
        self.cells.get(&d).map_or(0, |(a, b)| a + b)
    }
}

impl fmt::Display for ClassTableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.length)?;
        for (d, (so, nso)) in &self.cells {
            write!(f, " | d={d}: {} ({so}+{nso})", so + nso)?;
        }
        write!(f, " | total {}", self.total)
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub k: usize,
    pub t: usize,
    /// Sorted by canonical form.
    pub classes: Vec<ClassifiedCode>,
    pub row: ClassTableRow,
}

/// All t-CIS `[tk, k]` codes up to coordinate permutation.
pub fn classify_tcis(k: usize, t: usize, method: Method, effort: Effort) -> Result<Classification> {
    if k == 0 || t < 2 {
        return Err(Error::Precondition(format!(
            "need k >= 1 and t >= 2, got k = {k}, t = {t}"
        )));
    }
    let n = t * k;
    let max_len = match effort {
        Effort::Standard => 12,
        Effort::Extended => 15,
    };
    if n > max_len || k > 5 {
        return Err(Error::Infeasible(format!(
            "classifying length {n} (k = {k}) needs a higher effort level or is out of range"
        )));
    }
    let forms = match method {
        Method::AppendBlock => append_blocks(k, t)?,
        Method::AppendCat => append_cat(k, t, effort)?,
    };
    let classes = forms
        .into_par_iter()
        .map(|f| describe(f, t))
        .collect::<Result<Vec<_>>>()?;
    let row = ClassTableRow::from_codes(n, &classes);
    Ok(Classification { k, t, classes, row })
}

fn append_blocks(k: usize, t: usize) -> Result<Vec<CanonicalCode>> {
    let blocks: Vec<BitMatrix> = independent_column_sets(k)
        .iter()
        .map(|cols| columns_to_matrix(k, cols))
        .collect::<Result<_>>()?;
    let mut reps = vec![BitMatrix::identity(k)];
    for _ in 1..t {
        let pairs: Vec<(usize, usize)> =
            (0..reps.len()).cartesian_product(0..blocks.len()).collect();
        let forms = dedupe(pairs.into_par_iter().map(|(r, b)| {
            let g = reps[r].hcat(&blocks[b])?;
            canonical_form(&LinearCode::new(g)?)
        }))?;
        reps = forms.iter().map(|f| f.generator()).collect();
        if reps.is_empty() {
            return Err(Error::Internal("no extension produced a code".into()));
        }
    }
    reps.into_iter()
        .map(|g| canonical_form(&LinearCode::new(g)?))
        .collect()
}

fn append_cat(k: usize, t: usize, effort: Effort) -> Result<Vec<CanonicalCode>> {
    let cat = enumerate_cat(k, t, effort)?;
    let id = BitMatrix::identity(k);
    dedupe(cat.representatives.par_iter().map(|a| {
        let g = id.hcat(a)?;
        canonical_form(&LinearCode::new(g)?)
    }))
}

fn dedupe(
    forms: impl ParallelIterator<Item = Result<CanonicalCode>>,
) -> Result<Vec<CanonicalCode>> {
    let set = forms
        .try_fold(HashSet::new, |mut acc, f| {
            acc.insert(f?);
            Ok::<_, Error>(acc)
        })
        .try_reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            Ok(a)
        })?;
    let mut out: Vec<CanonicalCode> = set.into_iter().collect();
    out.sort();
    Ok(out)
}

fn describe(canonical: CanonicalCode, t: usize) -> Result<ClassifiedCode> {
    let code = canonical.code();
    let order = match t_cis_partition(&code, t)? {
        PartitionOutcome::Partition(sets) => sets.concat(),
        PartitionOutcome::Violation { .. } => {
            return Err(Error::Internal(
                "classified code failed the t-CIS test".into(),
            ))
        }
    };
    let code = code.select_columns(&order)?;
    Ok(ClassifiedCode {
        min_distance: code.min_distance(None)?,
        self_orthogonal: code.is_self_orthogonal(),
        code,
        canonical,
    })
}

/// Sorted sets of `k` linearly independent nonzero columns, one per class of
/// `GL(k, 2)` under column permutation.
fn independent_column_sets(k: usize) -> Vec<Vec<usize>> {
    (1..1usize << k)
        .combinations(k)
        .filter(|cols| independent(cols))
        .collect()
}

fn independent(cols: &[usize]) -> bool {
    // indexed by leading bit
    let mut basis = [0usize; usize::BITS as usize];
    for &c in cols {
        let mut x = c;
        while x != 0 {
            let h = x.ilog2() as usize;
            if basis[h] == 0 {
                basis[h] = x;
                break;
            }
            x ^= basis[h];
        }
        if x == 0 {
            return false;
        }
    }
    true
}

fn columns_to_matrix(k: usize, cols: &[usize]) -> Result<BitMatrix> {
    BitMatrix::from_columns(
        &cols
            .iter()
            .map(|&v| BitVector::from_u64(k, v as u64))
            .collect::<Vec<_>>(),
    )
}
