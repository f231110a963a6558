//! Exact graded-geometry calculus for Lie algebroids, Lie bialgebroids and
//! their L∞ versions, with structures encoded as polynomial Hamiltonians on
//! shifted cotangent bundles.

pub mod algebroid;
pub mod bialgebroid;
pub mod bracket;
pub mod constructions;
pub mod error;
pub mod graded;
pub mod symplectic;

pub use error::{Error, Result};
