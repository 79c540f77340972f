use std::collections::HashMap;

use super::sparse::SparseMatrix;
use crate::error::{Error, Result};
use crate::simpset::SimplicialSet;

/// Normalized chains: a basis of nondegenerate simplices per dimension and
/// the boundary matrices between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexData {
    /// `basis[k]` lists the ids of the nondegenerate `k`-simplices.
    pub basis: Vec<Vec<usize>>,
    /// `boundaries[k]` is `d_k: C_k -> C_{k-1}`, with
    /// `basis[k-1].len()` rows and `basis[k].len()` columns. `boundaries[0]`
    /// has no rows.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplexData {
    pub fn max_dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn boundary(&self, k: usize) -> &SparseMatrix {
        &self.boundaries[k]
    }

    /// Check `d_{k-1} d_k = 0` for every `k`.
    pub fn check_boundary_squared(&self) -> Result<()> {
        for k in 2..=self.max_dim() {
            let dd = self.boundaries[k - 1].multiply(&self.boundaries[k])?;
            if !dd.is_zero() {
                return Err(Error::IdentityViolation(format!(
                    "boundary squared is nonzero in dim {k}"
                )));
            }
        }
        Ok(())
    }

    /// Alternating sum of basis sizes.
    pub fn euler_characteristic(&self) -> i64 {
        self.basis
            .iter()
            .enumerate()
            .map(|(k, b)| if k % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) })
            .sum()
    }
}

/// Build the normalized chain complex of `x` after auditing its identities.
/// Faces landing on degenerate simplices are dropped.
pub fn normalized_complex(x: &SimplicialSet) -> Result<ChainComplexData> {
    x.audit()?;
    let basis: Vec<Vec<usize>> = (0..=x.max_dim()).map(|n| x.nondegenerate(n)).collect();
    let position: Vec<HashMap<usize, usize>> = basis
        .iter()
        .map(|b| b.iter().enumerate().map(|(pos, &id)| (id, pos)).collect())
        .collect();
    let mut boundaries = vec![SparseMatrix::zeros(0, basis[0].len())];
    for k in 1..=x.max_dim() {
        let mut triplets = Vec::new();
        for (col, &id) in basis[k].iter().enumerate() {
            for i in 0..=k {
                if let Some(&row) = position[k - 1].get(&x.face(k, id, i)) {
                    triplets.push((row, col, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        boundaries.push(SparseMatrix::from_triplets(
            basis[k - 1].len(),
            basis[k].len(),
            triplets,
        )?);
    }
    Ok(ChainComplexData { basis, boundaries })
}
