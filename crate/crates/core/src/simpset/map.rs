use std::sync::Arc;

use super::SimplicialSet;
use crate::error::{Error, Result};

/// A dimensionwise assignment of simplices between two truncated sets.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    assignment: Vec<Vec<usize>>,
}

impl SimplicialMap {
    /// Validates shapes and that the assignment commutes with every face and
    /// with the degeneracies both sides carry.
    pub fn new(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        assignment: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let map = SimplicialMap::new_unchecked(source, target, assignment)?;
        map.check_simplicial()?;
        Ok(map)
    }

    /// Validates shapes only.
    pub fn new_unchecked(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        assignment: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if source.max_dim() > target.max_dim() || assignment.len() != source.max_dim() + 1 {
            return Err(Error::SizeMismatch(format!(
                "map from max_dim {} to max_dim {} with {} levels",
                source.max_dim(),
                target.max_dim(),
                assignment.len()
            )));
        }
        for (n, level) in assignment.iter().enumerate() {
            if level.len() != source.count(n) || level.iter().any(|&y| y >= target.count(n)) {
                return Err(Error::SizeMismatch(format!("assignment shape in dim {n}")));
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            assignment,
        })
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn assignment(&self) -> &[Vec<usize>] {
        &self.assignment
    }

    pub fn apply(&self, dim: usize, id: usize) -> usize {
        self.assignment[dim][id]
    }

    pub fn check_simplicial(&self) -> Result<()> {
        let (src, tgt) = (&self.source, &self.target);
        for n in 0..=src.max_dim() {
            for x in 0..src.count(n) {
                let fx = self.apply(n, x);
                for i in 0..=n {
                    if n > 0 && self.apply(n - 1, src.face(n, x, i)) != tgt.face(n, fx, i) {
                        return Err(Error::NotSimplicial(format!(
                            "d_{i} fails on {} (dim {n})",
                            src.payload(n, x)
                        )));
                    }
                    if let (Some(sx), Some(sfx)) = (src.degeneracy(n, x, i), tgt.degeneracy(n, fx, i)) {
                        if self.apply(n + 1, sx) != sfx {
                            return Err(Error::NotSimplicial(format!(
                                "s_{i} fails on {} (dim {n})",
                                src.payload(n, x)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether every level is onto.
    pub fn is_surjective(&self) -> bool {
        (0..=self.source.max_dim()).all(|n| {
            let mut hit = vec![false; self.target.count(n)];
            for &y in &self.assignment[n] {
                hit[y] = true;
            }
            hit.into_iter().all(|h| h)
        })
    }

    /// Preimage sizes of every target simplex in dimension `dim`.
    pub fn fiber_sizes(&self, dim: usize) -> Vec<usize> {
        let mut sizes = vec![0; self.target.count(dim)];
        for &y in &self.assignment[dim] {
            sizes[y] += 1;
        }
        sizes
    }

    pub fn compose(&self, after: &SimplicialMap) -> Result<SimplicialMap> {
        if !Arc::ptr_eq(&self.target, &after.source) && *self.target != *after.source {
            return Err(Error::TargetMismatch);
        }
        let assignment = self
            .assignment
            .iter()
            .enumerate()
            .map(|(n, level)| level.iter().map(|&y| after.apply(n, y)).collect())
            .collect();
        SimplicialMap::new_unchecked(self.source.clone(), after.target.clone(), assignment)
    }
}
