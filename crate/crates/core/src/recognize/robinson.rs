use serde::{Deserialize, Serialize};

use super::{require, Relation, Verdict, Witness};
use crate::error::Result;
use crate::matrix::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RobinsonKind {
    /// Entries grow moving away from the diagonal.
    Dissimilarity,
    /// Entries shrink moving away from the diagonal.
    Similarity,
}

/// Robinson dissimilarity test: `a[i,k] >= max(a[i,j], a[j,k])` for all `i < j < k`.
pub fn check_robinson(a: &ExactMatrix) -> Result<Verdict> {
    check_robinson_with(a, RobinsonKind::Dissimilarity)
}

pub fn check_robinson_with(a: &ExactMatrix, kind: RobinsonKind) -> Result<Verdict> {
    a.require_symmetric()?;
    if adjacent_ok(a, kind) {
        return Ok(Verdict::Yes(()));
    }
    Ok(Verdict::No(first_triple(a, kind)))
}

// Symmetry lets us look at rows only: to the right of the diagonal entries
// must be monotone away from it, to the left monotone towards it.
fn adjacent_ok(a: &ExactMatrix, kind: RobinsonKind) -> bool {
    let n = a.n();
    let outward = |near: usize, far: usize, r: usize| match kind {
        RobinsonKind::Dissimilarity => a.get(r, near) <= a.get(r, far),
        RobinsonKind::Similarity => a.get(r, near) >= a.get(r, far),
    };
    for r in 0..n {
        for j in r + 1..n.saturating_sub(1) {
            if !outward(j, j + 1, r) {
                return false;
            }
        }
        for j in 0..r.saturating_sub(1) {
            if !outward(j + 1, j, r) {
                return false;
            }
        }
    }
    true
}

fn first_triple(a: &ExactMatrix, kind: RobinsonKind) -> Witness {
    let n = a.n();
    let rel = match kind {
        RobinsonKind::Dissimilarity => Relation::Ge,
        RobinsonKind::Similarity => Relation::Le,
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let idx = || vec![i + 1, j + 1, k + 1];
                let aik = a.get(i, k).clone();
                if let Some(w) = require(
                    idx,
                    || format!("a[{},{}] {} a[{},{}]", i + 1, k + 1, rel.symbol(), i + 1, j + 1),
                    aik.clone(),
                    rel,
                    a.get(i, j).clone(),
                ) {
                    return w;
                }
                if let Some(w) = require(
                    idx,
                    || format!("a[{},{}] {} a[{},{}]", i + 1, k + 1, rel.symbol(), j + 1, k + 1),
                    aik,
                    rel,
                    a.get(j, k).clone(),
                ) {
                    return w;
                }
            }
        }
    }
    unreachable!("adjacent Robinson test failed but no violating triple exists")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::rational::int;

    #[test]
    fn single_triple_violation() {
        let a = ExactMatrix::from_i64_rows(&[[0, 2, 1], [2, 0, 3], [1, 3, 0]]);
        let w = check_robinson(&a).unwrap().witness().cloned().unwrap();
        assert_eq!(w.indices, vec![1, 2, 3]);
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(1), int(2)));
        assert!(w.is_violation());
    }

    #[test]
    fn zero_and_small_are_robinson() {
        assert!(check_robinson(&ExactMatrix::zeros(5)).unwrap().is_yes());
        assert!(check_robinson(&ExactMatrix::zeros(1)).unwrap().is_yes());
        let a = ExactMatrix::from_i64_rows(&[[9, -3], [-3, 4]]);
        assert!(check_robinson(&a).unwrap().is_yes());
    }

    #[test]
    fn diagonal_is_ignored() {
        let a = ExactMatrix::from_i64_rows(&[[50, 1, 2], [1, -7, 1], [2, 1, 9]]);
        assert!(check_robinson(&a).unwrap().is_yes());
    }

    #[test]
    fn similarity_reverses() {
        let a = ExactMatrix::from_i64_rows(&[[0, 3, 1], [3, 0, 2], [1, 2, 0]]);
        assert!(check_robinson_with(&a, RobinsonKind::Similarity).unwrap().is_yes());
        assert!(!check_robinson(&a).unwrap().is_yes());
        let neg = a.neg();
        assert!(check_robinson(&neg).unwrap().is_yes());
    }

    #[test]
    fn rejects_asymmetric() {
        let a = ExactMatrix::from_i64_rows(&[[0, 1], [2, 0]]);
        assert!(matches!(check_robinson(&a), Err(Error::NotSymmetric { .. })));
    }
}
