//! Exhaustive and sampled verification suites behind `csx check` and the
//! acceptance run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bundles::{pullback_lemma_check, upsilon_check};
use crate::perm::{CyclicElement, Permutation};
use crate::simpset::SimplicialSet;

/// Pair counts above this are sampled instead of exhausted.
pub const EXHAUSTIVE_PAIRS: usize = 1_000_000;
const SAMPLED_PAIRS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub exhaustive: bool,
    pub counterexample: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// First failure among the relations for one pair `(h, f)`, if any.
fn crossed_failure(h: &Permutation, f: &Permutation) -> Option<String> {
    let n = h.degree();
    let hf = h.multiply(f).expect("same degree");
    let hinv = h.inverse();
    for i in 0..=n {
        let k = hinv.apply(i);
        if n > 0 {
            let lhs = hf.face(i).unwrap();
            let rhs = h.face(i).unwrap().multiply(&f.face(k).unwrap()).unwrap();
            if lhs != rhs {
                return Some(format!("d_{i}({h} . {f}) = {lhs}, expected {rhs}"));
            }
        }
        let lhs = hf.degeneracy(i).unwrap();
        let rhs = h.degeneracy(i).unwrap().multiply(&f.degeneracy(k).unwrap()).unwrap();
        if lhs != rhs {
            return Some(format!("s_{i}({h} . {f}) = {lhs}, expected {rhs}"));
        }
    }
    let inv = hf.inverse();
    let anti = f.inverse().multiply(&hinv).unwrap();
    if inv != anti {
        return Some(format!("({h} . {f})^-1 = {inv}, expected {anti}"));
    }
    None
}

/// The crossed relations `d_i(h f) = d_i h . d_{h^-1(i)} f` and
/// `s_i(h f) = s_i h . s_{h^-1(i)} f`, plus `(h f)^-1 = f^-1 h^-1`, for all
/// degrees up to `max_n`. Degrees with more than [`EXHAUSTIVE_PAIRS`] pairs
/// are sampled with a seeded generator.
pub fn check_crossed(max_n: usize, seed: u64) -> Vec<CheckResult> {
    (0..=max_n)
        .map(|n| {
            let all = Permutation::all(n);
            let pairs = all.len() * all.len();
            let exhaustive = pairs <= EXHAUSTIVE_PAIRS;
            let (cases, counterexample) = if exhaustive {
                let bad = all.par_iter().find_map_first(|h| {
                    all.iter().find_map(|f| crossed_failure(h, f))
                });
                (pairs, bad)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
                let bad = (0..SAMPLED_PAIRS).find_map(|_| {
                    let h = &all[rng.gen_range(0..all.len())];
                    let f = &all[rng.gen_range(0..all.len())];
                    crossed_failure(h, f)
                });
                (SAMPLED_PAIRS, bad)
            };
            CheckResult {
                name: format!("crossed relations, degree {n}"),
                cases,
                exhaustive,
                counterexample,
            }
        })
        .collect()
}

/// Inversion against the structure maps:
/// `(d_i f)^-1 = d_{f^-1(i)} f^-1` and `(s_i f)^-1 = s_{f^-1(i)} f^-1`.
pub fn check_inversion(max_n: usize) -> Vec<CheckResult> {
    (0..=max_n)
        .map(|n| {
            let all = Permutation::all(n);
            let bad = all.par_iter().find_map_first(|f| {
                let finv = f.inverse();
                (0..=n).find_map(|i| {
                    let k = finv.apply(i);
                    if n > 0 && f.face(i).unwrap().inverse() != finv.face(k).unwrap() {
                        return Some(format!("inverse of d_{i} {f}"));
                    }
                    (f.degeneracy(i).unwrap().inverse() != finv.degeneracy(k).unwrap())
                        .then(|| format!("inverse of s_{i} {f}"))
                })
            });
            CheckResult {
                name: format!("inversion rules, degree {n}"),
                cases: all.len(),
                exhaustive: true,
                counterexample: bad,
            }
        })
        .collect()
}

/// Faces and degeneracies of powers of `tau` stay powers of `tau`.
pub fn check_cyclic_closure(max_n: usize) -> CheckResult {
    let mut cases = 0;
    let mut bad = None;
    'outer: for n in 0..=max_n {
        for c in CyclicElement::all(n) {
            let f = c.as_permutation();
            cases += 1;
            for i in 0..=n {
                let face_ok = n == 0 || f.face(i).unwrap().is_cyclic();
                if !face_ok || !f.degeneracy(i).unwrap().is_cyclic() {
                    bad = Some(format!("structure map {i} on {f}"));
                    break 'outer;
                }
            }
        }
    }
    CheckResult {
        name: "cyclic closure".into(),
        cases,
        exhaustive: true,
        counterexample: bad,
    }
}

pub fn check_identities(name: &str, x: &SimplicialSet) -> CheckResult {
    CheckResult {
        name: format!("simplicial identities on {name}"),
        cases: x.counts().iter().sum(),
        exhaustive: true,
        counterexample: x.audit().err().map(|e| e.to_string()),
    }
}

fn over_all_g(name: &str, max_n: usize, f: impl Fn(&Permutation) -> Option<String> + Sync) -> CheckResult {
    let all: Vec<Permutation> = (0..=max_n).flat_map(Permutation::all).collect();
    let bad = all.par_iter().find_map_first(|g| f(g).map(|e| format!("g = {g}: {e}")));
    CheckResult {
        name: name.into(),
        cases: all.len(),
        exhaustive: true,
        counterexample: bad,
    }
}

/// `E(circ g)` against the pullback, for every `g` of degree at most `max_n`.
pub fn check_pullback_lemma(max_n: usize) -> CheckResult {
    over_all_g("pullback lemma", max_n, |g| {
        pullback_lemma_check(g, g.degree() + 1).err().map(|e| e.to_string())
    })
}

/// The reorientation comparison for every `g` of degree at most `max_n`.
pub fn check_upsilon(max_n: usize) -> CheckResult {
    over_all_g("reorientation comparison", max_n, |g| {
        upsilon_check(g, g.degree() + 1).err().map(|e| e.to_string())
    })
}
