use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{require, Relation, Verdict};
use crate::decompose::weak_sum_gammas;
use crate::error::Result;
use crate::matrix::ExactMatrix;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumVariant {
    Sum,
    WeakSum,
    Constant,
    WeakConstant,
}

impl SumVariant {
    pub const ALL: [SumVariant; 4] = [
        SumVariant::Sum,
        SumVariant::WeakSum,
        SumVariant::Constant,
        SumVariant::WeakConstant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SumVariant::Sum => "sum",
            SumVariant::WeakSum => "weak_sum",
            SumVariant::Constant => "constant",
            SumVariant::WeakConstant => "weak_constant",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SumCertificate {
    /// `a[i,j] = alpha[i] + beta[j]` everywhere.
    Sum {
        #[serde(with = "rational::serde_vec")]
        alpha: Vec<Rational>,
        #[serde(with = "rational::serde_vec")]
        beta: Vec<Rational>,
    },
    /// `a[i,j] = gamma[i] + gamma[j]` off the diagonal.
    WeakSum {
        #[serde(with = "rational::serde_vec")]
        gamma: Vec<Rational>,
    },
    /// Every entry (or every off-diagonal entry) equals `value`.
    Constant {
        #[serde(with = "rational::serde_str")]
        value: Rational,
    },
}

/// Sum-type membership.
///
/// * `sum`: rejection witness is the first row-major cell with
///   `a[i,j] + a[1,1] != a[i,1] + a[1,j]`, an identity every sum matrix obeys.
/// * `weak_sum` (symmetric input only): rejection witness is the first
///   adjacent Kalmanson condition that is not tight.
/// * `constant` / `weak_constant`: first cell differing from `a[1,1]`
///   (resp. `a[1,2]`); for `n = 1` the weak constant is reported as 0.
pub fn check_sum_family(a: &ExactMatrix, variant: SumVariant) -> Result<Verdict<SumCertificate>> {
    let n = a.n();
    let at = |i: usize, j: usize| a.get(i - 1, j - 1).clone();
    Ok(match variant {
        SumVariant::Sum => {
            for i in 1..=n {
                for j in 1..=n {
                    if let Some(w) = require(
                        || vec![i, j],
                        || format!("a[{i},{j}] + a[1,1] = a[{i},1] + a[1,{j}]"),
                        at(i, j) + at(1, 1),
                        Relation::Eq,
                        at(i, 1) + at(1, j),
                    ) {
                        return Ok(Verdict::No(w));
                    }
                }
            }
            Verdict::Yes(SumCertificate::Sum {
                alpha: (1..=n).map(|i| at(i, 1) - at(1, 1)).collect(),
                beta: (1..=n).map(|j| at(1, j)).collect(),
            })
        }
        SumVariant::WeakSum => weak_sum_gammas(a)?.map(|gamma| SumCertificate::WeakSum { gamma }),
        SumVariant::Constant => constant(a, false),
        SumVariant::WeakConstant => constant(a, true),
    })
}

fn constant(a: &ExactMatrix, weak: bool) -> Verdict<SumCertificate> {
    let n = a.n();
    let (ri, rj) = if weak { (1, 2) } else { (1, 1) };
    if weak && n == 1 {
        return Verdict::Yes(SumCertificate::Constant {
            value: Rational::zero(),
        });
    }
    let reference = a.get(ri - 1, rj - 1).clone();
    for i in 1..=n {
        for j in 1..=n {
            if weak && i == j {
                continue;
            }
            if let Some(w) = require(
                || vec![i, j],
                || format!("a[{i},{j}] = a[{ri},{rj}]"),
                a.get(i - 1, j - 1).clone(),
                Relation::Eq,
                reference.clone(),
            ) {
                return Verdict::No(w);
            }
        }
    }
    Verdict::Yes(SumCertificate::Constant { value: reference })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn weak_constant_ignores_diagonal() {
        let a = ExactMatrix::from_fn(6, |i, j| if i == j { int(0) } else { int(-2) });
        let v = check_sum_family(&a, SumVariant::WeakConstant).unwrap();
        assert_eq!(v, Verdict::Yes(SumCertificate::Constant { value: int(-2) }));
        assert!(!check_sum_family(&a, SumVariant::Constant).unwrap().is_yes());
    }

    #[test]
    fn weak_sum_recovers_gamma() {
        let g = [1, 2, 3];
        let a = ExactMatrix::from_fn(3, |i, j| if i == j { int(100) } else { int(g[i] + g[j]) });
        match check_sum_family(&a, SumVariant::WeakSum).unwrap() {
            Verdict::Yes(SumCertificate::WeakSum { gamma }) => {
                assert_eq!(gamma, vec![int(1), int(2), int(3)])
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn outlier_is_the_witness() {
        let mut a = ExactMatrix::from_fn(5, |i, j| if i == j { int(1) } else { int(0) });
        a.set(2, 4, int(7));
        for v in [SumVariant::WeakConstant, SumVariant::Constant, SumVariant::Sum] {
            let w = check_sum_family(&a, v).unwrap().witness().cloned().unwrap();
            assert!(w.is_violation());
            if v == SumVariant::WeakConstant {
                assert_eq!(w.indices, vec![3, 5]);
            }
        }
    }

    #[test]
    fn sum_certificate_rebuilds() {
        let a = ExactMatrix::from_fn(4, |i, j| int(3 * i as i64 - 2 * j as i64 + 5));
        let Verdict::Yes(SumCertificate::Sum { alpha, beta }) =
            check_sum_family(&a, SumVariant::Sum).unwrap()
        else {
            panic!("sum matrix rejected")
        };
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a.get(i, j), &(&alpha[i] + &beta[j]));
            }
        }
    }
}
