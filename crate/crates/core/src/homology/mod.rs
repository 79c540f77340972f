//! Exact integer homology of truncated simplicial sets.

pub mod chain;
mod elim;
pub mod int;
pub mod report;
pub mod snf;
pub mod sparse;

pub use chain::{normalized_complex, ChainComplexData};
pub use report::{homology_report, rank_mod_p, HomologyGroup, HomologyReport};
pub use snf::{
    determinant, smith_normal_form, smith_normal_form_certified, smith_normal_form_sparse,
    Certificate, OverflowPolicy, SmithForm, DENSE_LIMIT,
};
pub use sparse::SparseMatrix;

use crate::error::Result;
use crate::simpset::SimplicialSet;

/// Normalized complex and its homology in one step.
pub fn homology_of(x: &SimplicialSet, policy: OverflowPolicy) -> Result<HomologyReport> {
    homology_report(&normalized_complex(x)?, policy)
}
