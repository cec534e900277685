//! Exact membership tests for the structured matrix classes.
//!
//! Every test returns either a certificate or the lexicographically first
//! violated inequality. Witness indices are 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

mod cut;
mod kalmanson;
mod monge;
mod report;
mod robinson;
mod sum;
mod toeplitz;

pub use cut::check_cut_matrix;
pub use kalmanson::{check_kalmanson, kalmanson_adjacent_violations};
pub(crate) use kalmanson::adjacent_conditions as kalmanson_adjacent_conditions;
pub use monge::{check_monge_family, MongeVariant};
pub use report::{classify, ClassEntry, ClassificationReport, VerdictKind};
pub use robinson::{check_robinson, check_robinson_with, RobinsonKind};
pub use sum::{check_sum_family, SumCertificate, SumVariant};
pub use toeplitz::{extract_toeplitz_profile, ToeplitzFlag, ToeplitzProfile};

/// The relation an inequality requires between its two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// A violated inequality: `lhs relation rhs` is required and false.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub inequality: String,
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
    pub relation: Relation,
}

impl Witness {
    pub fn new(
        indices: Vec<usize>,
        inequality: impl Into<String>,
        lhs: Rational,
        relation: Relation,
        rhs: Rational,
    ) -> Self {
        Self {
            indices,
            inequality: inequality.into(),
            lhs,
            rhs,
            relation,
        }
    }

    /// True when the recorded inequality is indeed violated.
    pub fn is_violation(&self) -> bool {
        !self.relation.holds(&self.lhs, &self.rhs)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at {:?}: {} vs {}",
            self.inequality,
            self.indices,
            rational::format(&self.lhs),
            rational::format(&self.rhs)
        )
    }
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T = ()> {
    Yes(T),
    No(Witness),
}

impl<T> Verdict<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Yes(_) => None,
            Verdict::No(w) => Some(w),
        }
    }

    pub fn ok(self) -> Option<T> {
        match self {
            Verdict::Yes(t) => Some(t),
            Verdict::No(_) => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Verdict<U> {
        match self {
            Verdict::Yes(t) => Verdict::Yes(f(t)),
            Verdict::No(w) => Verdict::No(w),
        }
    }

    pub fn into_result(self) -> Result<T, Witness> {
        match self {
            Verdict::Yes(t) => Ok(t),
            Verdict::No(w) => Err(w),
        }
    }
}

impl<T> From<Result<T, Witness>> for Verdict<T> {
    fn from(r: Result<T, Witness>) -> Self {
        match r {
            Ok(t) => Verdict::Yes(t),
            Err(w) => Verdict::No(w),
        }
    }
}

/// Builds a witness for `lhs rel rhs` if it fails.
pub(crate) fn require(
    indices: impl FnOnce() -> Vec<usize>,
    text: impl FnOnce() -> String,
    lhs: Rational,
    rel: Relation,
    rhs: Rational,
) -> Option<Witness> {
    if rel.holds(&lhs, &rhs) {
        None
    } else {
        Some(Witness::new(indices(), text(), lhs, rel, rhs))
    }
}
