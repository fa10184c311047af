use std::collections::HashMap;

use rayon::prelude::*;

use crate::classify::{canonical_form, CanonicalCode};
use crate::code::LinearCode;
use crate::gf2::{general_linear_group, BitMatrix};
use crate::partition::count_information_set_partitions;
use crate::{Error, Result};

/// Largest `|GL(k, 2)|^{t−1}` that [`mass_formula_check`] enumerates.
pub const MASS_ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone)]
pub struct MassClass {
    pub code: LinearCode,
    /// Systematic codes `(I | A_1 | … | A_{t−1})` that fell into this class.
    pub systematic_count: u64,
    /// `|Orb(C) ∩ C_sys|` from orbit-stabilizer: ordered information-set
    /// partitions times `(k!)^t`, divided by the automorphism group order.
    pub orbit_count: u128,
}

#[derive(Debug, Clone)]
pub struct MassReport {
    pub k: usize,
    pub t: usize,
    pub gl_order: u64,
    /// `|GL(k, 2)|^{t−1}`
    pub systematic_total: u64,
    pub classes: Vec<MassClass>,
}

impl MassReport {
    pub fn orbit_sum(&self) -> u128 {
        self.classes.iter().map(|c| c.orbit_count).sum()
    }

    /// The orbit sizes add up to the number of systematic codes and each one
    /// matches the enumeration.
    pub fn holds(&self) -> bool {
        self.orbit_sum() == self.systematic_total as u128
            && self
                .classes
                .iter()
                .all(|c| c.orbit_count == c.systematic_count as u128)
    }
}

/// Enumerates every systematic t-CIS `[tk, k]` code, groups them into
/// permutation classes and compares with the orbit sizes.
pub fn mass_formula_check(k: usize, t: usize) -> Result<MassReport> {
    if k == 0 || t < 2 {
        return Err(Error::Precondition(format!(
            "need k >= 1 and t >= 2, got k = {k}, t = {t}"
        )));
    }
    let gl = general_linear_group(k)?;
    let g = gl.len() as u64;
    let total = (0..t - 1)
        .try_fold(1u64, |acc, _| {
            acc.checked_mul(g).filter(|&v| v <= MASS_ENUMERATION_LIMIT)
        })
        .ok_or_else(|| {
            Error::Infeasible(format!("|GL({k}, 2)|^{} is too large to enumerate", t - 1))
        })?;
    if t * k > crate::partition::ORACLE_MAX_LENGTH {
        return Err(Error::Infeasible(format!("length {} is too long", t * k)));
    }

    let id = BitMatrix::identity(k);
    let counts = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut gen = id.clone();
            for _ in 1..t {
                gen = gen.hcat(&gl[(idx % g) as usize])?;
                idx /= g;
            }
            canonical_form(&LinearCode::new(gen)?)
        })
        .try_fold(HashMap::new, |mut acc: HashMap<CanonicalCode, u64>, f| {
            *acc.entry(f?).or_default() += 1;
            Ok::<_, Error>(acc)
        })
        .try_reduce(HashMap::new, |mut a, b| {
            for (key, v) in b {
                *a.entry(key).or_default() += v;
            }
            Ok(a)
        })?;

    let mut keyed: Vec<(CanonicalCode, u64)> = counts.into_iter().collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let k_fact: u128 = (1..=k as u128).product();
    let t_fact: u128 = (1..=t as u128).product();
    let classes = keyed
        .into_iter()
        .map(|(form, systematic_count)| {
            let code = form.code();
            let unordered = count_information_set_partitions(&code, t)? as u128;
            let labelled = unordered * t_fact * k_fact.pow(t as u32);
            let aut = form.automorphism_group_order();
            if !labelled.is_multiple_of(aut) {
                return Err(Error::Internal(format!(
                    "automorphism order {aut} does not divide {labelled}"
                )));
            }
            Ok(MassClass {
                code,
                systematic_count,
                orbit_count: labelled / aut,
            })
        })
        .collect::<Result<_>>()?;

    Ok(MassReport {
        k,
        t,
        gl_order: g,
        systematic_total: total,
        classes,
    })
}
