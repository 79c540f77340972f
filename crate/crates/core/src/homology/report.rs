use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chain::ChainComplexData;
use super::int::to_u64;
use super::snf::{smith_normal_form, OverflowPolicy, SmithForm};
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

/// Prime for the rank cross-check.
const CHECK_PRIME: i64 = 1_000_000_007;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_z(&self) -> bool {
        self.betti == 1 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    #[serde(rename = "H")]
    pub groups: Vec<HomologyGroup>,
    /// The top group misses the boundaries coming from one dimension up.
    pub unreliable_top: bool,
}

impl HomologyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn bettis(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, g) in self.groups.iter().enumerate() {
            let note = if self.unreliable_top && k + 1 == self.groups.len() {
                "  (unreliable: truncation top)"
            } else {
                ""
            };
            out.push_str(&format!("H{k} = {g}{note}\n"));
        }
        out
    }
}

/// Integer homology of a normalized complex. Boundary matrices are reduced
/// in parallel; every rank is cross-checked modulo a large prime.
pub fn homology_report(cc: &ChainComplexData, policy: OverflowPolicy) -> Result<HomologyReport> {
    let top = cc.max_dim();
    let forms: Vec<SmithForm> = (1..=top)
        .into_par_iter()
        .map(|k| {
            let m = cc.boundary(k);
            let form = smith_normal_form(m, policy)?;
            check_rank_mod_p(m, &form)?;
            Ok(form)
        })
        .collect::<Result<_>>()?;
    let rank = |k: usize| if k == 0 || k > top { 0 } else { forms[k - 1].rank() };
    let sizes = cc.ranks();
    let mut groups = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let cycles = sizes[k]
            .checked_sub(rank(k))
            .ok_or_else(|| Error::SizeMismatch(format!("rank exceeds basis in dim {k}")))?;
        let betti = cycles
            .checked_sub(rank(k + 1))
            .ok_or_else(|| Error::SizeMismatch(format!("negative betti number in dim {k}")))?;
        let torsion = if k < top {
            forms[k]
                .torsion()
                .iter()
                .map(|t| to_u64(t).ok_or(Error::Overflow))
                .collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        groups.push(HomologyGroup { betti, torsion });
    }
    let alternating: i64 = groups
        .iter()
        .enumerate()
        .map(|(k, g)| if k % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
        .sum();
    // Only holds once the top boundary is counted as zero, which is how the
    // truncated complex is treated here.
    if alternating != cc.euler_characteristic() {
        return Err(Error::SizeMismatch("rank-nullity bookkeeping failed".into()));
    }
    Ok(HomologyReport {
        groups,
        unreliable_top: true,
    })
}

/// The rank over `F_p` must equal the number of invariant factors not
/// divisible by `p`.
fn check_rank_mod_p(m: &SparseMatrix, form: &SmithForm) -> Result<()> {
    let p = BigInt::from(CHECK_PRIME);
    let expected = form.factors.iter().filter(|d| !(*d % &p).is_zero()).count();
    let got = rank_mod_p(m, CHECK_PRIME);
    if got != expected {
        return Err(Error::SizeMismatch(format!(
            "rank mod p is {got}, Smith form predicts {expected}"
        )));
    }
    Ok(())
}

/// Rank of `m` over `F_p` by sparse Gaussian elimination.
pub fn rank_mod_p(m: &SparseMatrix, p: i64) -> usize {
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); m.rows()];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for &(r, c, v) in m.entries() {
        let v = v.rem_euclid(p);
        if v != 0 {
            rows[r].insert(c, v);
            cols[c].insert(r);
        }
    }
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(&r) = cols[c].iter().min_by_key(|&&r| rows[r].len()) else {
            continue;
        };
        let inv = pow_mod(rows[r][&c], p - 2, p);
        let pivot_row: Vec<(usize, i64)> = rows[r].iter().map(|(&k, &v)| (k, v)).collect();
        let others: Vec<usize> = cols[c].iter().copied().filter(|&x| x != r).collect();
        for r2 in others {
            let f = rows[r2][&c] * inv % p;
            for &(k, v) in &pivot_row {
                let cur = rows[r2].get(&k).copied().unwrap_or(0);
                let next = (cur - f * v % p).rem_euclid(p);
                if next == 0 {
                    rows[r2].remove(&k);
                    cols[k].remove(&r2);
                } else {
                    rows[r2].insert(k, next);
                    cols[k].insert(r2);
                }
            }
        }
        for &(k, _) in &pivot_row {
            cols[k].remove(&r);
        }
        rows[r].clear();
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1;
    b = b.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}
