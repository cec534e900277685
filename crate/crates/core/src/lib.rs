//! Structured quadratic assignment instances: exact recognition of the
//! matrix classes, conic decompositions into cut matrices, generators for
//! every class, and solvers that return the provably optimal permutation
//! together with a checkable certificate.
//!
//! All arithmetic is exact over `BigRational`. Indices that leave the
//! library (witnesses, files, permutation lists) are 1-based.

pub mod blocks;
pub mod decompose;
pub mod error;
pub mod generate;
pub mod lp;
pub mod matrix;
mod par;
pub mod rational;
pub mod recognize;
pub mod solve;

pub use blocks::BlockPartition;
pub use error::{Error, Result};
pub use matrix::{apply_permutation, compose, invert, qap_objective, ExactMatrix, Permutation};
pub use par::parallel_enabled;
pub use rational::Rational;
pub use recognize::{Relation, Verdict, Witness};
