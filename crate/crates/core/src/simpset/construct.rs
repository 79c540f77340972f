//! Constructions of truncated simplicial sets.

use std::collections::HashMap;
use std::sync::Arc;

use super::{build, CircularPermutation, Payload, SimplicialMap, SimplicialSet};
use crate::delta::MonotoneOperator;
use crate::error::{Error, Result};
use crate::perm::{CyclicElement, Permutation};

type NoDegeneracy<T> = fn(usize, &T, usize) -> T;

fn drop_point(values: &[usize], i: usize) -> Vec<usize> {
    let mut v = values.to_vec();
    v.remove(i);
    v
}

fn double_point(values: &[usize], i: usize) -> Vec<usize> {
    let mut v = values.to_vec();
    v.insert(i, values[i]);
    v
}

/// The standard simplex `Delta[n] = Hom(-, [n])`: `m`-simplices are monotone
/// operators `[m] -> [n]`, structure maps act by precomposition.
pub fn build_delta(n: usize, max_dim: usize) -> SimplicialSet {
    build(
        max_dim,
        |m| {
            MonotoneOperator::enumerate(m, n)
                .into_iter()
                .map(|op| op.values().to_vec())
                .collect()
        },
        |_, v: &Vec<usize>, i| drop_point(v, i),
        Some(|_, v: &Vec<usize>, i| double_point(v, i)),
        |_, v| Payload::Op(v.clone()),
    )
    .expect("Delta[n] is closed under its structure maps")
}

/// Nondegenerate part of `Delta[n]` as a semi-simplicial set.
pub fn semi_simplex(n: usize) -> SimplicialSet {
    injective_faces(n, n, |_| true)
}

/// The boundary of `Delta[n]` as a semi-simplicial set (`n >= 1`).
pub fn boundary_simplex(n: usize) -> SimplicialSet {
    assert!(n >= 1, "the boundary of a point is empty");
    injective_faces(n, n - 1, |v| v.len() < n + 1)
}

fn injective_faces(n: usize, max_dim: usize, keep: impl Fn(&[usize]) -> bool) -> SimplicialSet {
    build(
        max_dim,
        |m| {
            MonotoneOperator::enumerate(m, n)
                .into_iter()
                .filter(|op| op.is_injective() && keep(op.values()))
                .map(|op| op.values().to_vec())
                .collect()
        },
        |_, v: &Vec<usize>, i| drop_point(v, i),
        None::<NoDegeneracy<Vec<usize>>>,
        |_, v| Payload::Op(v.clone()),
    )
    .expect("faces of injective operators are injective")
}

/// The symmetric crossed simplicial group `S*`: all `(n + 1)!` permutation
/// words in dimension `n`.
pub fn build_s(max_dim: usize) -> SimplicialSet {
    build(
        max_dim,
        Permutation::all,
        |_, f: &Permutation, i| f.face(i).expect("index in range"),
        Some(|_, f: &Permutation, i| f.degeneracy(i).expect("index in range")),
        |_, f| Payload::Perm(f.word().to_vec()),
    )
    .expect("S* is closed under its structure maps")
}

/// The cyclic crossed simplicial group `C*`: powers of `tau_n`.
pub fn build_c(max_dim: usize) -> SimplicialSet {
    build(
        max_dim,
        |n| CyclicElement::all(n).map(|c| c.as_permutation()).collect(),
        |_, f: &Permutation, i| f.face(i).expect("index in range"),
        Some(|_, f: &Permutation, i| f.degeneracy(i).expect("index in range")),
        |_, f| Payload::Perm(f.word().to_vec()),
    )
    .expect("C* is closed under its structure maps")
}

/// The simplicial set `SC*` of circular permutations.
pub fn build_sc(max_dim: usize) -> SimplicialSet {
    build(
        max_dim,
        CircularPermutation::all,
        |_, c: &CircularPermutation, i| c.face(i).expect("index in range"),
        Some(|_, c: &CircularPermutation, i| c.degeneracy(i).expect("index in range")),
        |_, c| Payload::Circ(c.word().to_vec()),
    )
    .expect("SC* is closed under its structure maps")
}

/// The levelwise quotient `S* -> SC*` sending a word to its right cyclic
/// orbit. Both ends are built at `max_dim`.
pub fn quotient_map(max_dim: usize) -> Result<SimplicialMap> {
    quotient_between(Arc::new(build_s(max_dim)), Arc::new(build_sc(max_dim)))
}

pub fn quotient_between(s: Arc<SimplicialSet>, sc: Arc<SimplicialSet>) -> Result<SimplicialMap> {
    let assignment = (0..=s.max_dim())
        .map(|n| {
            (0..s.count(n))
                .map(|id| {
                    let f = perm_payload(&s, n, id)?;
                    let c = CircularPermutation::from_permutation(&f);
                    sc.find(n, &Payload::Circ(c.word().to_vec()))
                        .ok_or_else(|| Error::NotClosed(format!("{c} missing from SC")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(s, sc, assignment)
}

pub(crate) fn perm_payload(x: &SimplicialSet, dim: usize, id: usize) -> Result<Permutation> {
    match x.payload(dim, id) {
        Payload::Perm(w) => Permutation::new(w.clone()),
        other => Err(Error::Parse(format!("expected a permutation payload, got {other}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    S,
    C,
}

impl GroupKind {
    pub fn elements(self, n: usize) -> Vec<Permutation> {
        match self {
            GroupKind::S => Permutation::all(n),
            GroupKind::C => CyclicElement::all(n).map(|c| c.as_permutation()).collect(),
        }
    }
}

/// The twisted product `G x_t X`: pairs `(h, x)` with
/// `d_i(h, x) = (d_i h, d_{h^-1(i)} x)` and
/// `s_i(h, x) = (s_i h, s_{h^-1(i)} x)`.
pub fn twisted_product(group: GroupKind, x: &SimplicialSet) -> SimplicialSet {
    let degeneracy = x.has_degeneracies().then_some(|n: usize, (h, id): &(Permutation, usize), i: usize| {
        let k = h.pulled_index(i).expect("index in range");
        (
            h.degeneracy(i).expect("index in range"),
            x.degeneracy(n, *id, k).expect("below top"),
        )
    });
    build(
        x.max_dim(),
        |n| {
            group
                .elements(n)
                .into_iter()
                .flat_map(|h| (0..x.count(n)).map(move |id| (h.clone(), id)))
                .collect()
        },
        |n, (h, id): &(Permutation, usize), i| {
            let k = h.pulled_index(i).expect("index in range");
            (h.face(i).expect("index in range"), x.face(n, *id, k))
        },
        degeneracy,
        |n, (h, id)| Payload::pair(Payload::Perm(h.word().to_vec()), x.payload(n, *id).clone()),
    )
    .expect("twisted product is closed under its structure maps")
}

/// Levelwise fiber product of two maps into a common target.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub set: Arc<SimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
}

pub fn pullback(p: &SimplicialMap, q: &SimplicialMap) -> Result<Pullback> {
    if !Arc::ptr_eq(p.target(), q.target()) && **p.target() != **q.target() {
        return Err(Error::TargetMismatch);
    }
    let (xs, ys) = (p.source().clone(), q.source().clone());
    let max_dim = xs.max_dim().min(ys.max_dim());
    let with_degen = xs.has_degeneracies() && ys.has_degeneracies();
    let degeneracy = with_degen.then_some(|n: usize, (a, b): &(usize, usize), i: usize| {
        (
            xs.degeneracy(n, *a, i).expect("below top"),
            ys.degeneracy(n, *b, i).expect("below top"),
        )
    });
    let set = build(
        max_dim,
        |n| {
            let mut by_target: HashMap<usize, Vec<usize>> = HashMap::new();
            for b in 0..ys.count(n) {
                by_target.entry(q.apply(n, b)).or_default().push(b);
            }
            let mut out = Vec::new();
            for a in 0..xs.count(n) {
                if let Some(bs) = by_target.get(&p.apply(n, a)) {
                    out.extend(bs.iter().map(|&b| (a, b)));
                }
            }
            out
        },
        |n, (a, b): &(usize, usize), i| (xs.face(n, *a, i), ys.face(n, *b, i)),
        degeneracy,
        |n, (a, b)| Payload::pair(xs.payload(n, *a).clone(), ys.payload(n, *b).clone()),
    )?;
    let set = Arc::new(set);
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for n in 0..=max_dim {
        let (mut l, mut r) = (Vec::new(), Vec::new());
        for id in 0..set.count(n) {
            let Payload::Pair(a, b) = set.payload(n, id) else {
                unreachable!("pullback payloads are pairs")
            };
            l.push(xs.find(n, a).expect("left component exists"));
            r.push(ys.find(n, b).expect("right component exists"));
        }
        left.push(l);
        right.push(r);
    }
    Ok(Pullback {
        left: SimplicialMap::new(set.clone(), xs, left)?,
        right: SimplicialMap::new(set.clone(), ys, right)?,
        set,
    })
}

/// The Yoneda simplex `Delta[n] -> X` of an `n`-simplex `x`, sending an
/// operator `alpha` to `alpha^* x`. `Delta[n]` is truncated at `X.max_dim`.
pub fn yoneda(x: &Arc<SimplicialSet>, dim: usize, id: usize) -> Result<SimplicialMap> {
    if dim > x.max_dim() {
        return Err(Error::DimensionOverflow {
            requested: dim,
            max_dim: x.max_dim(),
        });
    }
    let delta = Arc::new(build_delta(dim, x.max_dim()));
    let assignment = (0..=x.max_dim())
        .map(|m| {
            (0..delta.count(m))
                .map(|a| {
                    let Payload::Op(values) = delta.payload(m, a) else {
                        unreachable!()
                    };
                    let op = MonotoneOperator::new(dim + 1, values.clone())?;
                    x.act(&op, dim, id)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(delta, x.clone(), assignment)
}

/// Reorient `X` along a decoration `a: X -> S*`: the new `j`-th face of `x`
/// is the old face at index `a(x)(j)`, likewise for degeneracies. Afterwards
/// `x -> a(x)^-1` is simplicial on the reoriented set.
pub fn reorient_upsilon(x: &SimplicialSet, decor: &SimplicialMap) -> Result<SimplicialSet> {
    if **decor.source() != *x {
        return Err(Error::SizeMismatch("decoration source differs from X".into()));
    }
    decor.check_simplicial()?;
    let target = decor.target();
    let mut levels = x.levels().to_vec();
    for (n, level) in levels.iter_mut().enumerate() {
        for id in 0..level.payloads.len() {
            let a = perm_payload(target, n, decor.apply(n, id))?;
            if n > 0 {
                let old = &x.levels()[n].faces[id];
                level.faces[id] = (0..=n).map(|j| old[a.apply(j)]).collect();
            }
            if let Some(old) = x.levels()[n].degeneracies.get(id) {
                level.degeneracies[id] = (0..=n).map(|j| old[a.apply(j)]).collect();
            }
        }
    }
    let out = SimplicialSet::from_levels(x.max_dim(), levels, x.has_degeneracies())?;
    out.audit()?;
    Ok(out)
}

/// Freely add degeneracies to a semi-simplicial set: `m`-simplices are pairs
/// `(eps, b)` of a surjection `eps: [m] -> [k]` and a `k`-simplex `b`. Any
/// degeneracies already present in `base` are ignored.
pub fn free_completion(base: &SimplicialSet, max_dim: usize) -> SimplicialSet {
    type Cell = (Vec<usize>, usize, usize);
    build(
        max_dim,
        |m| {
            let mut out: Vec<Cell> = Vec::new();
            for k in 0..=m.min(base.max_dim()) {
                for eps in MonotoneOperator::enumerate(m, k) {
                    if eps.is_surjective() {
                        out.extend((0..base.count(k)).map(|b| (eps.values().to_vec(), k, b)));
                    }
                }
            }
            out
        },
        |_, (eps, k, b): &Cell, i| {
            let v = eps[i];
            let rest = drop_point(eps, i);
            if rest.contains(&v) {
                (rest, *k, *b)
            } else {
                let shifted = rest.iter().map(|&w| if w > v { w - 1 } else { w }).collect();
                (shifted, k - 1, base.face(*k, *b, v))
            }
        },
        Some(|_, (eps, k, b): &Cell, i| (double_point(eps, i), *k, *b)),
        |_, (eps, k, b)| Payload::Free(eps.clone(), Box::new(base.payload(*k, *b).clone())),
    )
    .expect("free completion is closed under its structure maps")
}
