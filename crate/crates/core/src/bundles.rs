//! Circle bundles classified by `SC*`.
//!
//! A bundle over a (semi-)simplicial base is the pullback of the quotient
//! `S* -> SC*` along a decoration `base -> SC*`. Over a simplex `Delta[n]`
//! with the Yoneda decoration of `circ(g)` this is the right cyclic orbit
//! `E(circ g)`, which is also built directly from its definition.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::delta::MonotoneOperator;
use crate::error::{Error, Result};
use crate::perm::{CyclicElement, Permutation};
use crate::simpset::{
    build_delta, build_s, build_sc, free_completion, pullback, quotient_between, reorient_upsilon,
    twisted_product, yoneda, CircularPermutation, GroupKind, Payload, SimplicialMap,
    SimplicialSet,
};

/// A total space with its two projections and the decoration they cover.
#[derive(Clone, Debug)]
pub struct BundleTotalSpace {
    pub total: Arc<SimplicialSet>,
    /// The base the total space lies over: the decorated base itself, or its
    /// free completion when the decorated base carries faces only.
    pub base: Arc<SimplicialSet>,
    pub projection: SimplicialMap,
    pub classifying: SimplicialMap,
    /// `base -> SC*`.
    pub decoration: SimplicialMap,
}

impl BundleTotalSpace {
    /// Check that `circ . classifying = decoration . projection` and that every
    /// nondegenerate base `n`-simplex has exactly `n + 1` preimages.
    pub fn verify(&self) -> Result<()> {
        let s = self.classifying.target().clone();
        let sc = self.decoration.target().clone();
        let quotient = quotient_between(s, sc)?;
        let left = self.classifying.compose(&quotient)?;
        let right = self.projection.compose(&self.decoration)?;
        if left.assignment() != right.assignment() {
            return Err(Error::NotSimplicial("bundle square does not commute".into()));
        }
        for n in 0..=self.total.max_dim() {
            let sizes = self.projection.fiber_sizes(n);
            for id in self.base.nondegenerate(n) {
                if sizes[id] != n + 1 {
                    return Err(Error::SizeMismatch(format!(
                        "fiber over base simplex {id} in dim {n} has {} elements",
                        sizes[id]
                    )));
                }
            }
        }
        Ok(())
    }
}

fn op_payload(x: &SimplicialSet, dim: usize, id: usize) -> Result<MonotoneOperator> {
    match x.payload(dim, id) {
        Payload::Op(values) => {
            let target = values.iter().max().map_or(1, |&v| v + 1);
            MonotoneOperator::new(target, values.clone())
        }
        other => Err(Error::Parse(format!("expected an operator payload, got {other}"))),
    }
}

/// Projections of a set whose payloads are `(Op, Perm)` pairs, onto
/// `Delta[n]` and `S*`.
fn pair_projections(
    total: &Arc<SimplicialSet>,
    delta: &Arc<SimplicialSet>,
    s: &Arc<SimplicialSet>,
) -> Result<(SimplicialMap, SimplicialMap)> {
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for m in 0..=total.max_dim() {
        let (mut l, mut r) = (Vec::new(), Vec::new());
        for id in 0..total.count(m) {
            let Payload::Pair(a, b) = total.payload(m, id) else {
                return Err(Error::Parse("expected pair payloads".into()));
            };
            l.push(delta.find(m, a).ok_or_else(|| Error::NotClosed(format!("{a} not in Delta")))?);
            r.push(s.find(m, b).ok_or_else(|| Error::NotClosed(format!("{b} not in S")))?);
        }
        left.push(l);
        right.push(r);
    }
    Ok((
        SimplicialMap::new(total.clone(), delta.clone(), left)?,
        SimplicialMap::new(total.clone(), s.clone(), right)?,
    ))
}

/// `E(circ g)` from its definition: `m`-simplices are pairs
/// `(alpha, alpha_* g . tau^k)` for `alpha: [m] -> [n]`, with componentwise
/// faces and degeneracies.
pub fn e_of(g: &Permutation, max_dim: usize) -> Result<BundleTotalSpace> {
    let n = g.degree();
    let total = crate::simpset::build(
        max_dim,
        |m| {
            let mut out = Vec::new();
            for alpha in MonotoneOperator::enumerate(m, n) {
                let pushed = g.act(&alpha).expect("operator targets [n]");
                for c in CyclicElement::all(m) {
                    let f = pushed.multiply(&c.as_permutation()).expect("same degree");
                    out.push((alpha.values().to_vec(), f));
                }
            }
            out
        },
        |_, (a, f): &(Vec<usize>, Permutation), i| {
            let mut a = a.clone();
            a.remove(i);
            (a, f.face(i).expect("index in range"))
        },
        Some(|_, (a, f): &(Vec<usize>, Permutation), i| {
            let mut a = a.clone();
            a.insert(i, a[i]);
            (a, f.degeneracy(i).expect("index in range"))
        }),
        |_, (a, f)| Payload::pair(Payload::Op(a.clone()), Payload::Perm(f.word().to_vec())),
    )?;
    let total = Arc::new(total);
    let delta = Arc::new(build_delta(n, max_dim));
    let s = Arc::new(build_s(max_dim));
    let sc = Arc::new(build_sc(max_dim));
    let (projection, classifying) = pair_projections(&total, &delta, &s)?;
    let circ_g = CircularPermutation::from_permutation(g);
    let top = sc
        .find(n, &Payload::Circ(circ_g.word().to_vec()))
        .ok_or(Error::DimensionOverflow {
            requested: n,
            max_dim,
        })?;
    let decoration = yoneda(&sc, n, top)?;
    Ok(BundleTotalSpace {
        total,
        base: delta,
        projection,
        classifying,
        decoration,
    })
}

/// `E(circ g)` as the pullback of `S* -> SC*` along the Yoneda simplex of
/// `circ g`.
pub fn e_via_pullback(g: &Permutation, max_dim: usize) -> Result<BundleTotalSpace> {
    let n = g.degree();
    if n > max_dim {
        return Err(Error::DimensionOverflow {
            requested: n,
            max_dim,
        });
    }
    let s = Arc::new(build_s(max_dim));
    let sc = Arc::new(build_sc(max_dim));
    let circ_g = CircularPermutation::from_permutation(g);
    let top = sc
        .find(n, &Payload::Circ(circ_g.word().to_vec()))
        .expect("every necklace is in SC");
    let decoration = yoneda(&sc, n, top)?;
    let quotient = quotient_between(s, sc)?;
    let pb = pullback(&decoration, &quotient)?;
    Ok(BundleTotalSpace {
        total: pb.set,
        base: decoration.source().clone(),
        projection: pb.left,
        classifying: pb.right,
        decoration,
    })
}

/// The pullback square of `E(circ g)`: the direct construction coincides
/// with the fiber product, projections included, and both squares commute.
pub fn pullback_lemma_check(g: &Permutation, max_dim: usize) -> Result<()> {
    let direct = e_of(g, max_dim)?;
    let generic = e_via_pullback(g, max_dim)?;
    direct.verify()?;
    generic.verify()?;
    if *direct.total != *generic.total {
        return Err(Error::NotSimplicial(format!("E({g}) differs from the pullback")));
    }
    if direct.projection.assignment() != generic.projection.assignment()
        || direct.classifying.assignment() != generic.classifying.assignment()
    {
        return Err(Error::NotSimplicial(format!("projections of E({g}) differ")));
    }
    Ok(())
}

/// Compare `E(circ g^-1)` with the twisted product `C x_t Delta[n]`
/// reoriented along `(h, alpha) -> h . alpha_* g`. The comparison map is
/// `(h, alpha) -> (g^* alpha, (h . alpha_* g)^-1)`; it must be a bijection
/// in every dimension commuting with faces and degeneracies.
pub fn upsilon_check(g: &Permutation, max_dim: usize) -> Result<()> {
    let n = g.degree();
    let x = twisted_product(GroupKind::C, &build_delta(n, max_dim));
    let x = Arc::new(x);
    let s = Arc::new(build_s(max_dim));
    let mut decor = Vec::new();
    let mut image = Vec::new();
    let target = e_of(&g.inverse(), max_dim)?;
    for m in 0..=max_dim {
        let (mut d, mut im) = (Vec::new(), Vec::new());
        for id in 0..x.count(m) {
            let Payload::Pair(h, alpha) = x.payload(m, id) else {
                unreachable!("twisted product payloads are pairs")
            };
            let (Payload::Perm(h), Payload::Op(alpha)) = (&**h, &**alpha) else {
                unreachable!("twisted product of C and Delta")
            };
            let h = Permutation::new(h.clone())?;
            let alpha = MonotoneOperator::new(n + 1, alpha.clone())?;
            let a = h.multiply(&g.act(&alpha)?)?;
            d.push(s.find(m, &Payload::Perm(a.word().to_vec())).expect("S is complete"));
            let key = Payload::pair(
                Payload::Op(g.pull_operator(&alpha)?.values().to_vec()),
                Payload::Perm(a.inverse().word().to_vec()),
            );
            im.push(target.total.find(m, &key).ok_or_else(|| {
                Error::NotClosed(format!("{key} is not a simplex of E({})", g.inverse()))
            })?);
        }
        decor.push(d);
        image.push(im);
    }
    let decor = SimplicialMap::new(x.clone(), s, decor)?;
    let reoriented = Arc::new(reorient_upsilon(&x, &decor)?);
    for (m, im) in image.iter().enumerate() {
        let mut seen = vec![false; target.total.count(m)];
        for &y in im {
            seen[y] = true;
        }
        if im.len() != seen.len() || seen.iter().any(|&b| !b) {
            return Err(Error::NotSimplicial(format!("comparison is not bijective in dim {m}")));
        }
    }
    SimplicialMap::new(reoriented, target.total.clone(), image)?;
    Ok(())
}

pub fn upsilon_comparison(g: &Permutation) -> bool {
    upsilon_check(g, g.degree() + 1).is_ok()
}

/// A base with a necklace on every simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoration {
    pub base: Arc<SimplicialSet>,
    pub assignment: Vec<Vec<CircularPermutation>>,
}

impl Decoration {
    /// Checks degrees and face compatibility, naming the first bad simplex.
    pub fn new(base: Arc<SimplicialSet>, assignment: Vec<Vec<CircularPermutation>>) -> Result<Self> {
        if assignment.len() != base.max_dim() + 1 {
            return Err(Error::SizeMismatch(format!(
                "assignment has {} levels, base has {}",
                assignment.len(),
                base.max_dim() + 1
            )));
        }
        for (n, level) in assignment.iter().enumerate() {
            if level.len() != base.count(n) {
                return Err(Error::SizeMismatch(format!(
                    "{} values for {} simplices in dim {n}",
                    level.len(),
                    base.count(n)
                )));
            }
            for (id, c) in level.iter().enumerate() {
                let bad = |reason: String| Error::InvalidDecoration { dim: n, id, reason };
                if c.degree() != n {
                    return Err(bad(format!("{c} has the wrong size")));
                }
                for i in 0..=n {
                    if n > 0 && assignment[n - 1][base.face(n, id, i)] != c.face(i)? {
                        return Err(bad(format!("face {i} of {c} disagrees")));
                    }
                    if let Some(up) = base.degeneracy(n, id, i) {
                        if assignment[n + 1][up] != c.degeneracy(i)? {
                            return Err(bad(format!("degeneracy {i} of {c} disagrees")));
                        }
                    }
                }
            }
        }
        Ok(Decoration { base, assignment })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DecorationJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let json: DecorationJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        json.try_into()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecorationJson {
    pub base: crate::simpset::json::SimplicialSetJson,
    pub assignment: AssignmentJson,
}

/// A list of levels, or a single level.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AssignmentJson {
    Levels(Vec<LevelAssignment>),
    Single(LevelAssignment),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelAssignment {
    pub dim: usize,
    pub values: Vec<String>,
}

impl From<&Decoration> for DecorationJson {
    fn from(d: &Decoration) -> Self {
        DecorationJson {
            base: (&*d.base).into(),
            assignment: AssignmentJson::Levels(
                d.assignment
                    .iter()
                    .enumerate()
                    .map(|(dim, level)| LevelAssignment {
                        dim,
                        values: level.iter().map(ToString::to_string).collect(),
                    })
                    .collect(),
            ),
        }
    }
}

impl TryFrom<DecorationJson> for Decoration {
    type Error = Error;

    /// Levels may be listed in any order; a level left out is filled in
    /// when it is the unique choice (dimensions 0 and 1).
    fn try_from(json: DecorationJson) -> Result<Self> {
        let base = Arc::new(SimplicialSet::try_from(json.base)?);
        let levels = match json.assignment {
            AssignmentJson::Levels(v) => v,
            AssignmentJson::Single(l) => vec![l],
        };
        let mut assignment: Vec<Option<Vec<CircularPermutation>>> = vec![None; base.max_dim() + 1];
        for level in levels {
            if level.dim > base.max_dim() {
                return Err(Error::DimensionOverflow {
                    requested: level.dim,
                    max_dim: base.max_dim(),
                });
            }
            let values = level
                .values
                .iter()
                .map(|s| s.parse::<CircularPermutation>())
                .collect::<Result<Vec<_>>>()?;
            assignment[level.dim] = Some(values);
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(n, level)| match level {
                Some(v) => Ok(v),
                None if n <= 1 => Ok(vec![CircularPermutation::all(n).remove(0); base.count(n)]),
                None => Err(Error::Parse(format!("no assignment for dim {n}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Decoration::new(base, assignment)
    }
}

/// The decoration as a map into `SC*`, on the base itself when it has
/// degeneracies and on its free completion otherwise.
pub fn decoration_map(decor: &Decoration, max_dim: usize) -> Result<SimplicialMap> {
    let sc = Arc::new(build_sc(max_dim));
    let circ_id = |c: &CircularPermutation| {
        sc.find(c.degree(), &Payload::Circ(c.word().to_vec()))
            .expect("every necklace is in SC")
    };
    if decor.base.has_degeneracies() {
        if decor.base.max_dim() > max_dim {
            return Err(Error::DimensionOverflow {
                requested: decor.base.max_dim(),
                max_dim,
            });
        }
        let assignment = decor
            .assignment
            .iter()
            .map(|level| level.iter().map(circ_id).collect())
            .collect();
        return SimplicialMap::new(decor.base.clone(), sc.clone(), assignment);
    }
    let completed = Arc::new(free_completion(&decor.base, max_dim));
    let mut assignment = Vec::new();
    for m in 0..=max_dim {
        let mut level = Vec::new();
        for id in 0..completed.count(m) {
            let Payload::Free(eps, b) = completed.payload(m, id) else {
                unreachable!("free completion payloads")
            };
            let k = eps.last().copied().unwrap_or(0);
            let b = decor.base.find(k, b).expect("base simplex exists");
            let eps = MonotoneOperator::new(k + 1, eps.clone())?;
            level.push(sc.act(&eps, k, circ_id(&decor.assignment[k][b]))?);
        }
        assignment.push(level);
    }
    SimplicialMap::new(completed, sc.clone(), assignment)
}

/// The total space up to `max_dim`: the levelwise pullback of `S* -> SC*`
/// along the decoration.
pub fn total_space(decor: &Decoration, max_dim: usize) -> Result<BundleTotalSpace> {
    let decoration = decoration_map(decor, max_dim)?;
    let s = Arc::new(build_s(max_dim));
    let quotient = quotient_between(s, decoration.target().clone())?;
    let pb = pullback(&decoration, &quotient)?;
    Ok(BundleTotalSpace {
        total: pb.set,
        base: decoration.source().clone(),
        projection: pb.left,
        classifying: pb.right,
        decoration,
    })
}

/// A 0/1 value per base 2-simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCochain {
    pub values: Vec<u8>,
}

impl TwoCochain {
    pub fn new(values: Vec<u8>) -> Result<Self> {
        if let Some(v) = values.iter().find(|&&v| v > 1) {
            return Err(Error::Parse(format!("cochain value {v} is not 0 or 1")));
        }
        Ok(TwoCochain { values })
    }

    pub fn zero(len: usize) -> Self {
        TwoCochain { values: vec![0; len] }
    }

    /// Parse `"id:value,id:value"`; unlisted simplices get 0.
    pub fn parse(spec: &str, len: usize) -> Result<Self> {
        let mut values = vec![0u8; len];
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (id, v) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected id:value, got {part:?}")))?;
            let id: usize = id.trim().parse().map_err(|e| Error::Parse(format!("{part:?}: {e}")))?;
            let v: u8 = v.trim().parse().map_err(|e| Error::Parse(format!("{part:?}: {e}")))?;
            if id >= len {
                return Err(Error::IndexOutOfRange { index: id, bound: len.saturating_sub(1) });
            }
            values[id] = v;
        }
        TwoCochain::new(values)
    }

    pub fn sum(&self) -> usize {
        self.values.iter().map(|&v| v as usize).sum()
    }
}

/// The nondegenerate necklace of size three, which carries Chern value 1.
pub fn chern_necklace() -> CircularPermutation {
    CircularPermutation::new(vec![0, 2, 1]).expect("valid word")
}

pub fn chern_cochain(decor: &Decoration) -> TwoCochain {
    let one = chern_necklace();
    let values = decor
        .assignment
        .get(2)
        .map(|level| level.iter().map(|c| u8::from(*c == one)).collect())
        .unwrap_or_default();
    TwoCochain { values }
}

/// Decorate a base of dimension at most 2 from a cochain. Vertices and edges
/// have only one possible necklace, so the result is always compatible.
pub fn decorate_from_cochain(base: Arc<SimplicialSet>, c: &TwoCochain) -> Result<Decoration> {
    let top = (0..=base.max_dim()).rev().find(|&n| base.count(n) > 0).unwrap_or(0);
    if top > 2 {
        return Err(Error::BaseTooLarge(top));
    }
    let triangles = if base.max_dim() >= 2 { base.count(2) } else { 0 };
    if c.values.len() != triangles {
        return Err(Error::SizeMismatch(format!(
            "cochain has {} values for {triangles} triangles",
            c.values.len()
        )));
    }
    let flat = CircularPermutation::new(vec![0, 1, 2])?;
    let assignment = (0..=base.max_dim())
        .map(|n| match n {
            0 | 1 => vec![CircularPermutation::all(n).remove(0); base.count(n)],
            2 => c
                .values
                .iter()
                .map(|&v| if v == 1 { chern_necklace() } else { flat.clone() })
                .collect(),
            _ => Vec::new(),
        })
        .collect();
    Decoration::new(base, assignment)
}

/// The boundary of the tetrahedron, as a semi-simplicial base.
pub fn tetrahedron_boundary() -> Arc<SimplicialSet> {
    Arc::new(crate::simpset::boundary_simplex(3))
}

/// Degree of a cochain on the boundary of a simplex: the sum of its values
/// with the sign `(-1)^i` on the face opposite vertex `i`.
pub fn boundary_degree(base: &SimplicialSet, c: &TwoCochain) -> Result<i64> {
    let mut total = 0i64;
    for (id, &v) in c.values.iter().enumerate() {
        let op = op_payload(base, 2, id)?;
        let missing = (0..=3)
            .find(|k| !op.values().contains(k))
            .ok_or_else(|| Error::Parse("triangle touches every vertex".into()))?;
        let sign = if missing % 2 == 0 { 1 } else { -1 };
        total += sign * i64::from(v);
    }
    Ok(total)
}

/// A cochain on the tetrahedron boundary of the requested degree in
/// `-2..=2`, marking the faces opposite vertices `0` and `2` for positive
/// degrees and `1` and `3` for negative ones.
pub fn tetrahedron_cochain(degree: i64) -> Result<TwoCochain> {
    let base = tetrahedron_boundary();
    let marked: &[usize] = match degree {
        0 => &[],
        1 => &[0],
        2 => &[0, 2],
        -1 => &[1],
        -2 => &[1, 3],
        _ => return Err(Error::Parse(format!("degree {degree} is out of reach"))),
    };
    let mut values = vec![0; base.count(2)];
    for (id, v) in values.iter_mut().enumerate() {
        let op = op_payload(&base, 2, id)?;
        if marked.iter().any(|k| !op.values().contains(k)) {
            *v = 1;
        }
    }
    TwoCochain::new(values)
}

/// Result of a decoration search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Complete(Decoration),
    /// No necklace fits the faces of this simplex.
    Obstructed { dim: usize, id: usize },
}

impl Extension {
    pub fn obstruction_json(&self) -> Option<String> {
        match self {
            Extension::Complete(_) => None,
            Extension::Obstructed { dim, id } => Some(
                serde_json::json!({"obstruction": {"dim": dim, "simplex": id}}).to_string(),
            ),
        }
    }
}

/// Extend a partial decoration dimension by dimension, giving each open
/// simplex the first necklace whose faces match. A preset value that
/// disagrees with its faces is reported as the obstruction.
pub fn extend_decoration(
    base: Arc<SimplicialSet>,
    partial: &[Vec<Option<CircularPermutation>>],
) -> Result<Extension> {
    if partial.len() != base.max_dim() + 1
        || partial.iter().enumerate().any(|(n, l)| l.len() != base.count(n))
    {
        return Err(Error::SizeMismatch("partial decoration shape".into()));
    }
    let mut done: Vec<Vec<CircularPermutation>> = Vec::new();
    for (n, level) in partial.iter().enumerate() {
        let candidates = CircularPermutation::all(n);
        let mut out = Vec::with_capacity(level.len());
        for (id, preset) in level.iter().enumerate() {
            let fits = |c: &CircularPermutation| -> bool {
                n == 0
                    || (0..=n).all(|i| {
                        c.face(i).expect("index in range") == done[n - 1][base.face(n, id, i)]
                    })
            };
            let chosen = match preset {
                Some(c) if c.degree() == n && fits(c) => Some(c.clone()),
                Some(_) => None,
                None => candidates.iter().find(|c| fits(c)).cloned(),
            };
            match chosen {
                Some(c) => out.push(c),
                None => return Ok(Extension::Obstructed { dim: n, id }),
            }
        }
        done.push(out);
    }
    Ok(Extension::Complete(Decoration::new(base, done)?))
}

/// Lift a decoration of a sub-base to a partial decoration of `base`, by
/// matching payloads.
pub fn restrict_partial(base: &SimplicialSet, decor: &Decoration) -> Vec<Vec<Option<CircularPermutation>>> {
    (0..=base.max_dim())
        .map(|n| {
            (0..base.count(n))
                .map(|id| {
                    if n > decor.base.max_dim() {
                        return None;
                    }
                    decor
                        .base
                        .find(n, base.payload(n, id))
                        .map(|j| decor.assignment[n][j].clone())
                })
                .collect()
        })
        .collect()
}
