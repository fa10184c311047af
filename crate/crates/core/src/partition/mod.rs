//! Splitting the coordinates of a `[tk, k]` code into `t` disjoint
//! information sets, or certifying that no such split exists.
//!
//! The certificate for "no" is a column set `S` with `|S| > t·rank(S)`,
//! which by Edmonds' matroid partition theorem rules out every partition.

mod matroid;
mod oracle;

pub use matroid::ColumnMatroid;
pub use oracle::{
    count_information_set_partitions, exhaustive_partition_oracle, ORACLE_MAX_LENGTH,
};

use crate::code::LinearCode;
use crate::gf2::Echelon;
use crate::{Error, Result};

/// Answer of [`t_cis_partition`]. Index sets are 0-based and ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionOutcome {
    /// `t` pairwise disjoint information sets covering all coordinates,
    /// in label order `I_1, …, I_t`.
    Partition(Vec<Vec<usize>>),
    /// A column set `S` with `|S| > t·rank(S)`.
    Violation { set: Vec<usize>, rank: usize },
}

impl PartitionOutcome {
    pub fn is_partition(&self) -> bool {
        matches!(self, PartitionOutcome::Partition(_))
    }

    pub fn sets(&self) -> Option<&[Vec<usize>]> {
        match self {
            PartitionOutcome::Partition(s) => Some(s),
            PartitionOutcome::Violation { .. } => None,
        }
    }
}

/// Decides whether `c` is t-CIS with the augmenting exchange walk.
///
/// Each `I_i` starts empty. The smallest unassigned coordinate `x` is pushed
/// down the chain `S_0 = M`, `S_j = span(I_{j'} ∩ S_{j−1})` with
/// `j' = ((j−1) mod t) + 1` until it leaves some `S_j`; it is then added to
/// `I_{j'}`, or exchanged against the smallest element of its circuit lying
/// outside `S_{j−1}`, which becomes the next `x`. Every answer is checked
/// before it is returned.
pub fn t_cis_partition(c: &LinearCode, t: usize) -> Result<PartitionOutcome> {
    if t == 0 || c.n() != t * c.k() {
        return Err(Error::Dimension(format!(
            "a t-CIS test with t = {t} needs length t·k, got n = {} and k = {}",
            c.n(),
            c.k()
        )));
    }
    let m = ColumnMatroid::new(c.generator());
    let out = exchange_walk(&m, t)?;
    check_outcome(&m, t, &out)?;
    Ok(out)
}

fn exchange_walk(m: &ColumnMatroid, t: usize) -> Result<PartitionOutcome> {
    let n = m.len();
    let k = m.k();
    let full_rank = m.rank(&(0..n).collect::<Vec<_>>());
    let guard = n * k;
    let mut sets: Vec<Vec<usize>> = vec![Vec::with_capacity(k); t];
    let mut assigned = vec![false; n];
    let mut in_prev = vec![false; n];
    let mut in_cur = vec![false; n];

    while let Some(start) = assigned.iter().position(|&a| !a) {
        let mut x = start;
        let mut exchanges = 0usize;
        'walk: loop {
            // S_0 = M
            let mut cur: Vec<usize> = (0..n).collect();
            in_cur.iter_mut().for_each(|b| *b = true);
            let mut cur_rank = full_rank;
            let mut j = 0usize;
            loop {
                if cur.len() > t * cur_rank {
                    return Ok(PartitionOutcome::Violation {
                        set: cur,
                        rank: cur_rank,
                    });
                }
                if in_cur[x] {
                    j += 1;
                    let jp = (j - 1) % t;
                    std::mem::swap(&mut in_prev, &mut in_cur);
                    let basis: Vec<usize> =
                        sets[jp].iter().copied().filter(|&e| in_prev[e]).collect();
                    let mut ech = Echelon::new(k, basis.len());
                    for &e in &basis {
                        ech.insert(m.column(e));
                    }
                    let prev = std::mem::take(&mut cur);
                    in_cur.iter_mut().for_each(|b| *b = false);
                    for &e in &prev {
                        if ech.contains(m.column(e)) {
                            in_cur[e] = true;
                            cur.push(e);
                        }
                    }
                    cur_rank = basis.len();
                    continue;
                }
                // x ∈ S_{j−1} \ S_j with j ≥ 1
                let jp = (j - 1) % t;
                let set = &mut sets[jp];
                let mut ech = Echelon::new(k, set.len() + 1);
                for &e in set.iter() {
                    ech.insert(m.column(e));
                }
                let Some(coeffs) = ech.solve(m.column(x)) else {
                    set.push(x);
                    set.sort_unstable();
                    assigned[x] = true;
                    break 'walk;
                };
                let out = set
                    .iter()
                    .enumerate()
                    .filter(|&(i, &e)| coeffs.get(i) && !in_prev[e])
                    .map(|(_, &e)| e)
                    .min();
                let Some(out) = out else {
                    return Err(Error::Internal(format!(
                        "circuit of coordinate {x} lies inside S_{}",
                        j - 1
                    )));
                };
                set.retain(|&e| e != out);
                set.push(x);
                set.sort_unstable();
                assigned[x] = true;
                assigned[out] = false;
                x = out;
                exchanges += 1;
                if exchanges > guard {
                    return Err(Error::Internal(format!(
                        "exchange walk exceeded {guard} steps"
                    )));
                }
                continue 'walk;
            }
        }
    }
    Ok(PartitionOutcome::Partition(sets))
}

/// Verifies an outcome independently of how it was produced.
pub fn check_outcome(m: &ColumnMatroid, t: usize, out: &PartitionOutcome) -> Result<()> {
    match out {
        PartitionOutcome::Partition(sets) => {
            if sets.len() != t {
                return Err(Error::Internal(format!(
                    "{} sets, expected {t}",
                    sets.len()
                )));
            }
            let mut seen = vec![false; m.len()];
            for s in sets {
                if !m.is_basis(s) {
                    return Err(Error::Internal(format!("{s:?} is not an information set")));
                }
                for &e in s {
                    if std::mem::replace(&mut seen[e], true) {
                        return Err(Error::Internal(format!("coordinate {e} used twice")));
                    }
                }
            }
            if seen.iter().any(|&s| !s) {
                return Err(Error::Internal(
                    "partition does not cover all coordinates".into(),
                ));
            }
        }
        PartitionOutcome::Violation { set, rank } => {
            let r = m.rank(set);
            if r != *rank || set.len() <= t * r {
                return Err(Error::Internal(format!(
                    "claimed violation has size {} and rank {r}",
                    set.len()
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;

    fn code(rows: &[&str]) -> LinearCode {
        LinearCode::from_strs(rows).unwrap()
    }

    #[test]
    fn repeated_identity() {
        let i = BitMatrix::identity(4);
        let g = i.hcat(&i).unwrap().hcat(&i).unwrap();
        let out = t_cis_partition(&LinearCode::new(g).unwrap(), 3).unwrap();
        assert_eq!(
            out,
            PartitionOutcome::Partition(vec![
                vec![0, 1, 2, 3],
                vec![4, 5, 6, 7],
                vec![8, 9, 10, 11]
            ])
        );
    }

    #[test]
    fn zero_column_is_a_violation() {
        let c = code(&["101100", "010110"]);
        let out = t_cis_partition(&c, 3).unwrap();
        assert_eq!(
            out,
            PartitionOutcome::Violation {
                set: vec![5],
                rank: 0
            }
        );
    }

    #[test]
    fn repeated_column_block_violation() {
        // columns 0..3 all equal e1: |S| = 4 > 3 · 1
        let c = code(&["111100", "000011"]);
        match t_cis_partition(&c, 3).unwrap() {
            PartitionOutcome::Violation { set, rank } => assert!(set.len() > 3 * rank),
            p => panic!("unexpected {p:?}"),
        }
    }

    #[test]
    fn length_must_be_multiple() {
        assert!(t_cis_partition(&code(&["10110", "01011"]), 3).is_err());
    }
}
