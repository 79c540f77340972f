//! Smith normal form over the integers.
//!
//! Small matrices are reduced densely while tracking unimodular
//! transformations `U`, `V` with `U * M * V = D`. Larger ones go through a
//! sparse elimination that keeps only the diagonal. Both start in checked
//! `i64` arithmetic; an overflow either restarts the reduction over `BigInt`
//! or is reported, depending on the [`OverflowPolicy`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::elim::{dense_snf, sparse_diagonal};
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

/// Matrices with both dimensions below this are reduced densely, with
/// certificates.
pub const DENSE_LIMIT: usize = 300;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OverflowPolicy {
    /// Retry in arbitrary precision.
    #[default]
    Bigint,
    /// Fail with [`Error::Overflow`].
    Checked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Positive invariant factors `d_1 | d_2 | ...`, one per unit of rank.
    pub factors: Vec<BigInt>,
    pub certificate: Option<Certificate>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn divisibility_chain_holds(&self) -> bool {
        self.factors.iter().all(|d| d.is_positive())
            && self.factors.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }

    /// Re-check `U * M * V = D` exactly and `|det U| = |det V| = 1`. False
    /// when no certificate was kept.
    pub fn verify(&self, m: &SparseMatrix) -> bool {
        let Some(cert) = &self.certificate else {
            return false;
        };
        if m.rows() != self.rows || m.cols() != self.cols || !self.divisibility_chain_holds() {
            return false;
        }
        let dense: Vec<Vec<BigInt>> = m
            .to_dense()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let um = mat_mul(&cert.u, &dense, self.cols);
        let umv = mat_mul(&um, &cert.v, self.cols);
        for (i, row) in umv.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expected = if i == j && i < self.rank() {
                    self.factors[i].clone()
                } else {
                    BigInt::zero()
                };
                if *x != expected {
                    return false;
                }
            }
        }
        determinant(&cert.u).abs().is_one() && determinant(&cert.v).abs().is_one()
    }
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner_cols_hint: usize) -> Vec<Vec<BigInt>> {
    let cols = b.first().map_or(inner_cols_hint, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); cols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b[k].iter().enumerate() {
                    if !y.is_zero() {
                        out[j] += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Smith normal form, dense with certificate below [`DENSE_LIMIT`], sparse
/// without certificate above it.
pub fn smith_normal_form(m: &SparseMatrix, policy: OverflowPolicy) -> Result<SmithForm> {
    if m.rows() < DENSE_LIMIT && m.cols() < DENSE_LIMIT {
        smith_normal_form_certified(m, policy)
    } else {
        smith_normal_form_sparse(m, policy)
    }
}

pub fn smith_normal_form_certified(m: &SparseMatrix, policy: OverflowPolicy) -> Result<SmithForm> {
    if let Some(out) = dense_snf::<i64>(m) {
        return Ok(out);
    }
    match policy {
        OverflowPolicy::Checked => Err(Error::Overflow),
        OverflowPolicy::Bigint => dense_snf::<BigInt>(m).ok_or(Error::Overflow),
    }
}

pub fn smith_normal_form_sparse(m: &SparseMatrix, policy: OverflowPolicy) -> Result<SmithForm> {
    let diag = match sparse_diagonal::<i64>(m) {
        Some(d) => d.into_iter().map(BigInt::from).collect(),
        None => match policy {
            OverflowPolicy::Checked => return Err(Error::Overflow),
            OverflowPolicy::Bigint => sparse_diagonal::<BigInt>(m).ok_or(Error::Overflow)?,
        },
    };
    let factors = invariant_factors(diag);
    if policy == OverflowPolicy::Checked && factors.iter().any(|d| i64::try_from(d).is_err()) {
        return Err(Error::Overflow);
    }
    Ok(SmithForm {
        rows: m.rows(),
        cols: m.cols(),
        factors,
        certificate: None,
    })
}

/// Turn the diagonal of an equivalent diagonal matrix into invariant
/// factors by repeated `(a, b) -> (gcd, lcm)`.
fn invariant_factors(diag: Vec<BigInt>) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diag.into_iter().map(|x| x.abs()).collect();
    d.sort();
    for i in 0..d.len() {
        if d[i].is_one() {
            continue;
        }
        for j in i + 1..d.len() {
            if !d[j].is_multiple_of(&d[i]) {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d
}
