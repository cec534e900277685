use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{require, Relation, Verdict, Witness};
use crate::matrix::ExactMatrix;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MongeVariant {
    Monge,
    AntiMonge,
    /// Rows and columns non-decreasing; no sign condition.
    Monotone,
    MonotoneAntiMonge,
}

impl MongeVariant {
    pub const ALL: [MongeVariant; 4] = [
        MongeVariant::Monge,
        MongeVariant::AntiMonge,
        MongeVariant::Monotone,
        MongeVariant::MonotoneAntiMonge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MongeVariant::Monge => "monge",
            MongeVariant::AntiMonge => "anti_monge",
            MongeVariant::Monotone => "monotone",
            MongeVariant::MonotoneAntiMonge => "monotone_anti_monge",
        }
    }
}

/// Checks the families in a fixed order (sign, adjacent 2x2, monotonicity)
/// and reports the first failing cell tuple in row-major order within the
/// first failing family.
///
/// Adjacent 2x2 witnesses are `(i, i+1, j, j+1)` (two rows, two columns);
/// monotonicity witnesses are the two compared cells `(i, j, i', j')`.
pub fn check_monge_family(b: &ExactMatrix, variant: MongeVariant) -> Verdict {
    use MongeVariant::*;
    let n = b.n();
    let at = |i: usize, j: usize| b.get(i - 1, j - 1).clone();

    if variant != Monotone {
        for i in 1..=n {
            for j in 1..=n {
                if let Some(w) = require(
                    || vec![i, j],
                    || format!("b[{i},{j}] >= 0"),
                    at(i, j),
                    Relation::Ge,
                    Rational::zero(),
                ) {
                    return Verdict::No(w);
                }
            }
        }
    }

    if variant != Monotone {
        let rel = if variant == Monge { Relation::Le } else { Relation::Ge };
        for i in 1..n {
            for j in 1..n {
                if let Some(w) = require(
                    || vec![i, i + 1, j, j + 1],
                    || {
                        format!(
                            "b[{i},{j}] + b[{},{}] {} b[{i},{}] + b[{},{j}]",
                            i + 1,
                            j + 1,
                            rel.symbol(),
                            j + 1,
                            i + 1
                        )
                    },
                    at(i, j) + at(i + 1, j + 1),
                    rel,
                    at(i, j + 1) + at(i + 1, j),
                ) {
                    return Verdict::No(w);
                }
            }
        }
    }

    if matches!(variant, Monotone | MonotoneAntiMonge) {
        if let Some(w) = first_monotone_violation(b) {
            return Verdict::No(w);
        }
    }
    Verdict::Yes(())
}

fn first_monotone_violation(b: &ExactMatrix) -> Option<Witness> {
    let n = b.n();
    let at = |i: usize, j: usize| b.get(i - 1, j - 1).clone();
    for i in 1..=n {
        for j in 1..=n {
            if j < n {
                if let Some(w) = require(
                    || vec![i, j, i, j + 1],
                    || format!("b[{i},{j}] <= b[{i},{}]", j + 1),
                    at(i, j),
                    Relation::Le,
                    at(i, j + 1),
                ) {
                    return Some(w);
                }
            }
            if i < n {
                if let Some(w) = require(
                    || vec![i, j, i + 1, j],
                    || format!("b[{i},{j}] <= b[{},{j}]", i + 1),
                    at(i, j),
                    Relation::Le,
                    at(i + 1, j),
                ) {
                    return Some(w);
                }
            }
        }
    }
    None
}
