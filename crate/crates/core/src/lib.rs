//! Relational complexity of finite permutation groups.
//!
//! The crate computes relational complexity together with base and height
//! statistics, runs a battery of non-binarity tests, and works with
//! relational structures, homogeneity and closures.

mod backtrack;
pub mod catalog;
pub mod chain;
pub mod error;
pub mod group;
pub mod io;
pub mod perm;
pub mod relcomp;
pub mod structures;
pub mod verify;
pub mod witness;
pub mod oracle;
mod search;

pub use chain::StabilizerChain;
pub use error::{Error, Result};
pub use group::PermutationGroup;
pub use perm::Permutation;
