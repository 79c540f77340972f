//! The simplex category: monotone operators between finite ordinals
//! `[n] = {0, ..., n}`, cofaces, codegeneracies, and the factorization of an
//! arbitrary set map into a monotone operator after a fiberwise
//! order-preserving bijection.
//!
//! Operators are stored as explicit value sequences and evaluated
//! pointwise. Sizes count points, so `[n]` has size `n + 1`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default truncation used when enumerating operators.
pub const DEFAULT_MAX_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneOperator {
    target_size: usize,
    values: Vec<usize>,
}

impl MonotoneOperator {
    pub fn new(target_size: usize, values: Vec<usize>) -> Result<Self> {
        if values.iter().any(|&v| v >= target_size) {
            return Err(Error::InvalidOperator(format!(
                "{values:?} has a value outside [0, {target_size})"
            )));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidOperator(format!("{values:?} is not nondecreasing")));
        }
        Ok(MonotoneOperator { target_size, values })
    }

    /// Identity of `[n]`.
    pub fn identity(n: usize) -> Self {
        MonotoneOperator {
            target_size: n + 1,
            values: (0..=n).collect(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, j: usize) -> usize {
        self.values[j]
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values.first() == Some(&0)
            && self.values.last() == Some(&(self.target_size - 1))
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.values.len() == self.target_size && self.is_injective()
    }

    /// All monotone operators `[m] -> [n]`, in lexicographic order of their
    /// value sequences.
    pub fn enumerate(m: usize, n: usize) -> Vec<MonotoneOperator> {
        (0..=n)
            .combinations_with_replacement(m + 1)
            .map(|values| MonotoneOperator {
                target_size: n + 1,
                values,
            })
            .collect()
    }

    /// `self . delta_i`: drop the point `i` from the source.
    pub fn precompose_coface(&self, i: usize) -> Result<MonotoneOperator> {
        let op = coface(self.source_size() - 1, i)?;
        compose_ops(self, &op)
    }

    /// `self . sigma_i`: double the point `i` in the source.
    pub fn precompose_codegeneracy(&self, i: usize) -> Result<MonotoneOperator> {
        let op = codegeneracy(self.source_size() - 1, i)?;
        compose_ops(self, &op)
    }
}

impl fmt::Display for MonotoneOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.values.iter().join(","))
    }
}

/// An arbitrary map `[m] -> [n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetMap {
    target_size: usize,
    values: Vec<usize>,
}

impl SetMap {
    pub fn new(target_size: usize, values: Vec<usize>) -> Result<Self> {
        if values.iter().any(|&v| v >= target_size) {
            return Err(Error::InvalidOperator(format!(
                "{values:?} has a value outside [0, {target_size})"
            )));
        }
        Ok(SetMap { target_size, values })
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The composite `outer . perm` as a set map.
    pub fn from_composite(outer: &MonotoneOperator, perm: &Permutation) -> Result<SetMap> {
        if perm.word().len() != outer.source_size() {
            return Err(Error::SizeMismatch(format!(
                "operator source has {} points, permutation {}",
                outer.source_size(),
                perm.word().len()
            )));
        }
        Ok(SetMap {
            target_size: outer.target_size,
            values: perm.word().iter().map(|&j| outer.values[j]).collect(),
        })
    }
}

/// The coface `delta_i: [n-1] -> [n]`, the injection missing `i`.
pub fn coface(n: usize, i: usize) -> Result<MonotoneOperator> {
    if n == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, bound: n });
    }
    Ok(MonotoneOperator {
        target_size: n + 1,
        values: (0..n).map(|j| if j < i { j } else { j + 1 }).collect(),
    })
}

/// The codegeneracy `sigma_i: [n+1] -> [n]`, hitting `i` twice.
pub fn codegeneracy(n: usize, i: usize) -> Result<MonotoneOperator> {
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, bound: n });
    }
    Ok(MonotoneOperator {
        target_size: n + 1,
        values: (0..n + 2).map(|j| if j <= i { j } else { j - 1 }).collect(),
    })
}

/// Pointwise composite `outer . inner`.
pub fn compose_ops(outer: &MonotoneOperator, inner: &MonotoneOperator) -> Result<MonotoneOperator> {
    if inner.target_size != outer.source_size() {
        return Err(Error::SizeMismatch(format!(
            "inner targets {} points, outer has {} source points",
            inner.target_size,
            outer.source_size()
        )));
    }
    Ok(MonotoneOperator {
        target_size: outer.target_size,
        values: inner.values.iter().map(|&j| outer.values[j]).collect(),
    })
}

/// Factor `phi = xi . g` with `xi` monotone and `g` a bijection of the
/// source that is increasing on every fiber of `phi`.
///
/// `g(j)` is the rank of `j` in the stable sort of `phi`'s values, and `xi`
/// lists those values in sorted order.
pub fn sort_factorization(phi: &SetMap) -> (MonotoneOperator, Permutation) {
    let order: Vec<usize> = (0..phi.values.len())
        .sorted_by_key(|&j| phi.values[j])
        .collect();
    let mut rank = vec![0; order.len()];
    for (r, &j) in order.iter().enumerate() {
        rank[j] = r;
    }
    let xi = MonotoneOperator {
        target_size: phi.target_size,
        values: order.iter().map(|&j| phi.values[j]).collect(),
    };
    (xi, Permutation::from_word_unchecked(rank))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(target: usize, v: &[usize]) -> MonotoneOperator {
        MonotoneOperator::new(target, v.to_vec()).unwrap()
    }

    #[test]
    fn coface_examples() {
        assert_eq!(coface(1, 0).unwrap().values(), &[1]);
        assert_eq!(coface(2, 1).unwrap().values(), &[0, 2]);
        assert_eq!(coface(3, 3).unwrap().values(), &[0, 1, 2]);
        assert!(coface(2, 3).is_err());
        assert!(coface(0, 0).is_err());
    }

    #[test]
    fn codegeneracy_examples() {
        assert_eq!(codegeneracy(0, 0).unwrap().values(), &[0, 0]);
        assert_eq!(codegeneracy(1, 0).unwrap().values(), &[0, 0, 1]);
        assert_eq!(codegeneracy(1, 1).unwrap().values(), &[0, 1, 1]);
        assert!(codegeneracy(1, 2).is_err());
    }

    #[test]
    fn compose_examples() {
        let a = compose_ops(&coface(2, 1).unwrap(), &coface(1, 0).unwrap()).unwrap();
        assert_eq!(a.values(), &[2]);
        let b = compose_ops(&codegeneracy(1, 0).unwrap(), &coface(2, 0).unwrap()).unwrap();
        assert_eq!(b.values(), &[0, 1]);
        let x = op(4, &[0, 2, 2, 3]);
        assert_eq!(compose_ops(&MonotoneOperator::identity(3), &x).unwrap(), x);
        assert!(compose_ops(&coface(3, 0).unwrap(), &coface(1, 0).unwrap()).is_err());
    }

    #[test]
    fn new_validates() {
        assert!(MonotoneOperator::new(2, vec![1, 0]).is_err());
        assert!(MonotoneOperator::new(2, vec![0, 2]).is_err());
        assert!(SetMap::new(2, vec![1, 0]).is_ok());
        assert!(SetMap::new(2, vec![2]).is_err());
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(MonotoneOperator::enumerate(1, 1).len(), 3);
        assert_eq!(MonotoneOperator::enumerate(2, 2).len(), 10);
        for op in MonotoneOperator::enumerate(3, 2) {
            MonotoneOperator::new(op.target_size(), op.values().to_vec()).unwrap();
        }
    }

    #[test]
    fn sort_factorization_examples() {
        let mono = SetMap::new(3, vec![0, 1, 1, 2]).unwrap();
        let (xi, g) = sort_factorization(&mono);
        assert_eq!(xi.values(), mono.values());
        assert!(g.is_identity());

        let swap = SetMap::new(2, vec![1, 0]).unwrap();
        let (xi, g) = sort_factorization(&swap);
        assert_eq!(xi, MonotoneOperator::identity(1));
        assert_eq!(g.word(), &[1, 0]);

        let phi = SetMap::new(2, vec![1, 0, 1]).unwrap();
        let (xi, g) = sort_factorization(&phi);
        assert_eq!(xi.values(), &[0, 1, 1]);
        assert_eq!(g.word(), &[1, 0, 2]);
        assert_eq!(SetMap::from_composite(&xi, &g).unwrap(), phi);
    }
}
