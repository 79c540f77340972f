//! Truncated simplicial sets with explicit face and degeneracy tables.
//!
//! A [`SimplicialSet`] stores, for every dimension up to `max_dim`, a list of
//! simplex payloads with dense ids, the face table `d_i` and (optionally) the
//! degeneracy table `s_i`. Sets without degeneracies are semi-simplicial.
//! Constructions live in [`construct`]; every one of them sorts simplices by
//! payload so that ids are reproducible.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use itertools::Itertools;

use crate::delta::MonotoneOperator;
use crate::error::{Error, Result};

pub mod circular;
pub mod construct;
pub mod json;
pub mod map;

pub use circular::CircularPermutation;
pub use construct::{
    boundary_simplex, build_c, build_delta, build_s, build_sc, free_completion, pullback,
    quotient_between, quotient_map, reorient_upsilon, semi_simplex, twisted_product, yoneda, GroupKind, Pullback,
};
pub use map::SimplicialMap;

/// Simplex label. Equal payloads within a dimension denote equal simplices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Payload {
    /// Permutation word.
    Perm(Vec<usize>),
    /// Canonical circular word.
    Circ(Vec<usize>),
    /// Monotone operator `[m] -> [n]`, by values.
    Op(Vec<usize>),
    /// Freely added degeneracy: surjection values and the base simplex.
    Free(Vec<usize>, Box<Payload>),
    Pair(Box<Payload>, Box<Payload>),
    Label(String),
}

impl Payload {
    pub fn pair(a: Payload, b: Payload) -> Payload {
        Payload::Pair(Box::new(a), Box::new(b))
    }

    /// Parses the string form produced by `Display`. Strings that do not
    /// round-trip become [`Payload::Label`].
    pub fn parse(s: &str) -> Payload {
        let parsed = parse_payload(s);
        match parsed {
            Some(p) if p.to_string() == s => p,
            _ => Payload::Label(s.to_string()),
        }
    }
}

fn parse_digits(s: &str) -> Option<Vec<usize>> {
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|t| t.parse().ok()).collect()
}

fn parse_payload(s: &str) -> Option<Payload> {
    if let Some(rest) = s.strip_prefix("circ:") {
        return parse_digits(rest).map(Payload::Circ);
    }
    if let Some(rest) = s.strip_prefix("op:") {
        return parse_digits(rest).map(Payload::Op);
    }
    if let Some(rest) = s.strip_prefix("free[") {
        let (values, base) = rest.split_once("]:")?;
        return Some(Payload::Free(parse_digits(values)?, Box::new(Payload::parse(base))));
    }
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let mut depth = 0usize;
        for (k, ch) in inner.char_indices() {
            match ch {
                '(' | '[' => depth += 1,
                ')' | ']' => depth = depth.checked_sub(1)?,
                ';' if depth == 0 => {
                    let a = Payload::parse(&inner[..k]);
                    let b = Payload::parse(&inner[k + 1..]);
                    return Some(Payload::pair(a, b));
                }
                _ => {}
            }
        }
        return None;
    }
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || c == ',') {
        return parse_digits(s).map(Payload::Perm);
    }
    None
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Perm(w) => write!(f, "{}", w.iter().join(",")),
            Payload::Circ(w) => write!(f, "circ:{}", w.iter().join(",")),
            Payload::Op(w) => write!(f, "op:{}", w.iter().join(",")),
            Payload::Free(w, b) => write!(f, "free[{}]:{}", w.iter().join(","), b),
            Payload::Pair(a, b) => write!(f, "({a};{b})"),
            Payload::Label(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Level {
    pub payloads: Vec<Payload>,
    /// `faces[id][i]` is the id of `d_i` in the dimension below.
    pub faces: Vec<Vec<usize>>,
    /// `degeneracies[id][i]` is the id of `s_i` in the dimension above;
    /// empty at the top dimension and for semi-simplicial sets.
    pub degeneracies: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct SimplicialSet {
    max_dim: usize,
    levels: Vec<Level>,
    has_degeneracies: bool,
    index: Vec<HashMap<Payload, usize>>,
    degenerate: Vec<Vec<bool>>,
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.max_dim == other.max_dim
            && self.has_degeneracies == other.has_degeneracies
            && self.levels == other.levels
    }
}

impl Eq for SimplicialSet {}

impl SimplicialSet {
    /// Assemble a set from raw tables, checking table shapes and index
    /// ranges. Simplicial identities are not checked here; see
    /// [`SimplicialSet::audit`].
    pub fn from_levels(max_dim: usize, levels: Vec<Level>, has_degeneracies: bool) -> Result<Self> {
        if levels.len() != max_dim + 1 {
            return Err(Error::SizeMismatch(format!(
                "{} levels for max_dim {max_dim}",
                levels.len()
            )));
        }
        for (n, level) in levels.iter().enumerate() {
            let count = level.payloads.len();
            let faces_expected = if n == 0 { 0 } else { n + 1 };
            if level.faces.len() != count || level.faces.iter().any(|f| f.len() != faces_expected) {
                return Err(Error::SizeMismatch(format!("face table shape in dim {n}")));
            }
            if n > 0 {
                let below = levels[n - 1].payloads.len();
                if level.faces.iter().flatten().any(|&id| id >= below) {
                    return Err(Error::SizeMismatch(format!("face id out of range in dim {n}")));
                }
            }
            let with_degen = has_degeneracies && n < max_dim;
            let degen_expected = if with_degen { count } else { 0 };
            if level.degeneracies.len() != degen_expected
                || level.degeneracies.iter().any(|s| s.len() != n + 1)
            {
                return Err(Error::SizeMismatch(format!("degeneracy table shape in dim {n}")));
            }
            if with_degen {
                let above = levels[n + 1].payloads.len();
                if level.degeneracies.iter().flatten().any(|&id| id >= above) {
                    return Err(Error::SizeMismatch(format!(
                        "degeneracy id out of range in dim {n}"
                    )));
                }
            }
        }
        let index = levels
            .iter()
            .enumerate()
            .map(|(n, level)| {
                let map: HashMap<_, _> = level
                    .payloads
                    .iter()
                    .enumerate()
                    .map(|(id, p)| (p.clone(), id))
                    .collect();
                if map.len() != level.payloads.len() {
                    return Err(Error::SizeMismatch(format!("duplicate payloads in dim {n}")));
                }
                Ok(map)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut degenerate: Vec<Vec<bool>> =
            levels.iter().map(|l| vec![false; l.payloads.len()]).collect();
        for n in 0..max_dim {
            for row in &levels[n].degeneracies {
                for &id in row {
                    degenerate[n + 1][id] = true;
                }
            }
        }
        Ok(SimplicialSet {
            max_dim,
            levels,
            has_degeneracies,
            index,
            degenerate,
        })
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn has_degeneracies(&self) -> bool {
        self.has_degeneracies
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn count(&self, dim: usize) -> usize {
        self.levels.get(dim).map_or(0, |l| l.payloads.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.payloads.len()).collect()
    }

    pub fn payload(&self, dim: usize, id: usize) -> &Payload {
        &self.levels[dim].payloads[id]
    }

    pub fn find(&self, dim: usize, payload: &Payload) -> Option<usize> {
        self.index.get(dim)?.get(payload).copied()
    }

    pub fn face(&self, dim: usize, id: usize, i: usize) -> usize {
        self.levels[dim].faces[id][i]
    }

    /// `s_i` of a simplex, if the truncation and structure provide it.
    pub fn degeneracy(&self, dim: usize, id: usize, i: usize) -> Option<usize> {
        self.levels[dim]
            .degeneracies
            .get(id)
            .map(|row| row[i])
    }

    pub fn is_degenerate(&self, dim: usize, id: usize) -> bool {
        self.degenerate[dim][id]
    }

    /// Simplices of dimension `dim` outside the image of every `s_i`.
    pub fn nondegenerate(&self, dim: usize) -> Vec<usize> {
        (0..self.count(dim))
            .filter(|&id| !self.degenerate[dim][id])
            .collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.max_dim).map(|n| self.nondegenerate(n).len()).collect()
    }

    /// Apply an operator `alpha: [m] -> [n]` to an `n`-simplex, i.e. evaluate
    /// the contravariant functor on `alpha`. Faces remove the points outside
    /// the image, then degeneracies double the repeated points.
    pub fn act(&self, op: &MonotoneOperator, dim: usize, id: usize) -> Result<usize> {
        if op.target_size() != dim + 1 {
            return Err(Error::SizeMismatch(format!(
                "operator targets {} points, simplex has dimension {dim}",
                op.target_size()
            )));
        }
        let m = op.source_size() - 1;
        if m > self.max_dim {
            return Err(Error::DimensionOverflow {
                requested: m,
                max_dim: self.max_dim,
            });
        }
        let image: Vec<usize> = op.values().iter().copied().dedup().collect();
        let mut cur = id;
        let mut cur_dim = dim;
        for v in (0..=dim).rev() {
            if image.binary_search(&v).is_err() {
                cur = self.face(cur_dim, cur, v);
                cur_dim -= 1;
            }
        }
        // epi part [m] -> [k], k = image.len() - 1
        let mut epi: Vec<usize> = op
            .values()
            .iter()
            .map(|v| image.binary_search(v).unwrap())
            .collect();
        let mut doubled = Vec::new();
        while let Some(r) = (0..epi.len().saturating_sub(1)).find(|&r| epi[r] == epi[r + 1]) {
            doubled.push(r);
            epi.remove(r + 1);
        }
        for &r in doubled.iter().rev() {
            cur = self
                .degeneracy(cur_dim, cur, r)
                .ok_or_else(|| Error::NotClosed(format!("no degeneracy s_{r} in dim {cur_dim}")))?;
            cur_dim += 1;
        }
        debug_assert_eq!(cur_dim, m);
        Ok(cur)
    }

    /// Check every simplicial identity whose two sides exist within the
    /// truncation.
    pub fn audit(&self) -> Result<()> {
        for n in 2..=self.max_dim {
            for x in 0..self.count(n) {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(n - 1, self.face(n, x, j), i);
                        let rhs = self.face(n - 1, self.face(n, x, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::IdentityViolation(format!(
                                "d_{i} d_{j} != d_{} d_{i} on {} (dim {n})",
                                j - 1,
                                self.payload(n, x)
                            )));
                        }
                    }
                }
            }
        }
        if !self.has_degeneracies {
            return Ok(());
        }
        for n in 0..self.max_dim {
            for x in 0..self.count(n) {
                for j in 0..=n {
                    let sx = self.degeneracy(n, x, j).expect("below top");
                    if n + 2 <= self.max_dim {
                        for i in 0..=j {
                            let lhs = self.degeneracy(n + 1, sx, i).unwrap();
                            let six = self.degeneracy(n, x, i).unwrap();
                            let rhs = self.degeneracy(n + 1, six, j + 1).unwrap();
                            if lhs != rhs {
                                return Err(Error::IdentityViolation(format!(
                                    "s_{i} s_{j} != s_{} s_{i} on {} (dim {n})",
                                    j + 1,
                                    self.payload(n, x)
                                )));
                            }
                        }
                    }
                    for i in 0..=n + 1 {
                        let lhs = self.face(n + 1, sx, i);
                        let rhs = if i == j || i == j + 1 {
                            Some(x)
                        } else if i < j {
                            let dx = self.face(n, x, i);
                            self.degeneracy(n - 1, dx, j - 1)
                        } else {
                            let dx = self.face(n, x, i - 1);
                            self.degeneracy(n - 1, dx, j)
                        };
                        if rhs != Some(lhs) {
                            return Err(Error::IdentityViolation(format!(
                                "d_{i} s_{j} on {} (dim {n})",
                                self.payload(n, x)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds a set from an enumeration of typed simplices and structure maps on
/// them. Simplices are sorted by payload; a face or degeneracy landing
/// outside the enumeration is an error.
pub(crate) fn build<T, E, F, D, L>(
    max_dim: usize,
    mut enumerate: E,
    face: F,
    degeneracy: Option<D>,
    label: L,
) -> Result<SimplicialSet>
where
    T: Clone + Eq + Hash,
    E: FnMut(usize) -> Vec<T>,
    F: Fn(usize, &T, usize) -> T,
    D: Fn(usize, &T, usize) -> T,
    L: Fn(usize, &T) -> Payload,
{
    let mut items: Vec<Vec<T>> = Vec::with_capacity(max_dim + 1);
    let mut payloads: Vec<Vec<Payload>> = Vec::with_capacity(max_dim + 1);
    let mut lookup: Vec<HashMap<T, usize>> = Vec::with_capacity(max_dim + 1);
    for n in 0..=max_dim {
        let mut level: Vec<(Payload, T)> = enumerate(n).into_iter().map(|t| (label(n, &t), t)).collect();
        level.sort_by(|a, b| a.0.cmp(&b.0));
        level.dedup_by(|a, b| a.0 == b.0);
        let (p, t): (Vec<_>, Vec<_>) = level.into_iter().unzip();
        lookup.push(t.iter().cloned().enumerate().map(|(id, x)| (x, id)).collect());
        items.push(t);
        payloads.push(p);
    }
    let locate = |n: usize, t: &T, what: &dyn Fn() -> String| -> Result<usize> {
        lookup[n]
            .get(t)
            .copied()
            .ok_or_else(|| Error::NotClosed(what()))
    };
    let mut levels = Vec::with_capacity(max_dim + 1);
    for n in 0..=max_dim {
        let mut faces = Vec::with_capacity(items[n].len());
        let mut degeneracies = Vec::new();
        for (id, t) in items[n].iter().enumerate() {
            if n > 0 {
                let row = (0..=n)
                    .map(|i| {
                        locate(n - 1, &face(n, t, i), &|| {
                            format!("d_{i} of {} (dim {n})", payloads[n][id])
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                faces.push(row);
            } else {
                faces.push(Vec::new());
            }
            if let Some(degen) = degeneracy.as_ref().filter(|_| n < max_dim) {
                let row = (0..=n)
                    .map(|i| {
                        locate(n + 1, &degen(n, t, i), &|| {
                            format!("s_{i} of {} (dim {n})", payloads[n][id])
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                degeneracies.push(row);
            }
        }
        levels.push(Level {
            payloads: std::mem::take(&mut payloads[n]),
            faces,
            degeneracies,
        });
    }
    SimplicialSet::from_levels(max_dim, levels, degeneracy.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn payload_strings_round_trip() {
        let samples = [
            Payload::Perm(vec![2, 0, 1]),
            Payload::Circ(vec![0, 2, 1]),
            Payload::Op(vec![0, 0, 1]),
            Payload::Free(vec![0, 0, 1], Box::new(Payload::Op(vec![0, 2]))),
            Payload::pair(Payload::Op(vec![0, 1]), Payload::Perm(vec![1, 0])),
            Payload::pair(
                Payload::Perm(vec![0]),
                Payload::pair(Payload::Label("x".into()), Payload::Circ(vec![0])),
            ),
            Payload::Label("v3".into()),
        ];
        for p in samples {
            assert_eq!(Payload::parse(&p.to_string()), p, "{p}");
        }
        assert_eq!(Payload::parse("007"), Payload::Label("007".into()));
    }
}
