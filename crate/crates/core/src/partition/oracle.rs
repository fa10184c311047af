use crate::code::LinearCode;
use crate::{Error, Result};

/// Longest code accepted by the exhaustive search.
pub const ORACLE_MAX_LENGTH: usize = 18;

/// Exhaustive search for a partition of the coordinates into `t` information
/// sets. Coordinates are placed in increasing order; a coordinate may open
/// only the first empty set, so each unordered partition is visited once.
pub fn exhaustive_partition_oracle(c: &LinearCode, t: usize) -> Result<Option<Vec<Vec<usize>>>> {
    let mut s = Search::new(c, t)?;
    let mut found = None;
    s.run(0, &mut |sets| {
        found = Some(sets.to_vec());
        true
    });
    Ok(found)
}

/// Number of unordered partitions of the coordinates into `t` information sets.
pub fn count_information_set_partitions(c: &LinearCode, t: usize) -> Result<u64> {
    let mut s = Search::new(c, t)?;
    let mut count = 0u64;
    s.run(0, &mut |_| {
        count += 1;
        false
    });
    Ok(count)
}

struct Search {
    k: usize,
    cols: Vec<u64>,
    // xor basis per set, indexed by leading bit
    bases: Vec<Vec<u64>>,
    sets: Vec<Vec<usize>>,
}

impl Search {
    fn new(c: &LinearCode, t: usize) -> Result<Self> {
        let (n, k) = (c.n(), c.k());
        if t == 0 || n != t * k {
            return Err(Error::Dimension(format!(
                "length {n} is not t·k for t = {t}, k = {k}"
            )));
        }
        if n > ORACLE_MAX_LENGTH {
            return Err(Error::Infeasible(format!(
                "exhaustive partition search is limited to length {ORACLE_MAX_LENGTH}"
            )));
        }
        let g = c.generator();
        Ok(Search {
            k,
            cols: (0..n).map(|j| g.column_u64(j)).collect(),
            bases: vec![vec![0; k]; t],
            sets: vec![Vec::with_capacity(k); t],
        })
    }

    /// Calls `leaf` on each complete partition; stops when it returns true.
    fn run(&mut self, pos: usize, leaf: &mut dyn FnMut(&[Vec<usize>]) -> bool) -> bool {
        if pos == self.cols.len() {
            return leaf(&self.sets);
        }
        for i in 0..self.sets.len() {
            let len = self.sets[i].len();
            if len == self.k {
                continue;
            }
            let mut v = self.cols[pos];
            for b in (0..self.k).rev() {
                if (v >> b) & 1 == 1 && self.bases[i][b] != 0 {
                    v ^= self.bases[i][b];
                }
            }
            if v != 0 {
                let top = 63 - v.leading_zeros() as usize;
                self.bases[i][top] = v;
                self.sets[i].push(pos);
                let stop = self.run(pos + 1, leaf);
                self.sets[i].pop();
                self.bases[i][top] = 0;
                if stop {
                    return true;
                }
            }
            if len == 0 {
                break;
            }
        }
        false
    }
}
