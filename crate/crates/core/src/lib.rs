//! Finite truncations of the crossed simplicial groups `S*` and `C*`, the
//! simplicial set `SC*` of circular permutations, minimally triangulated
//! circle bundles over semi-simplicial bases, and exact integer homology for
//! checking that `SC*` has the homology of `K(Z, 2)` in the computed range.

pub mod bundles;
pub mod checks;
pub mod cli;
pub mod delta;
pub mod error;
pub mod homology;
pub mod perm;
pub mod simpset;

pub use error::{Error, Result};
