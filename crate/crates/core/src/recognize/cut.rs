use num_traits::{One, Zero};

use super::{require, Relation, Verdict};
use crate::blocks::BlockPartition;
use crate::matrix::ExactMatrix;
use crate::rational::Rational;

/// Recovers the consecutive partition of a cut matrix.
///
/// Neighbours `i, i+1` share a block exactly when `a[i,i+1] = 0`, which fixes
/// the partition; every cell is then compared against it and the first
/// row-major mismatch is the witness.
pub fn check_cut_matrix(a: &ExactMatrix) -> Verdict<BlockPartition> {
    let n = a.n();
    let mut blocks = Vec::new();
    let mut lo = 1;
    for i in 1..n {
        if !a.get(i - 1, i).is_zero() {
            blocks.push((lo, i));
            lo = i + 1;
        }
    }
    blocks.push((lo, n));
    let part = BlockPartition::new(n, blocks).expect("blocks built consecutively");
    let owner: Vec<usize> = (1..=n).map(|i| part.block_of(i)).collect();
    for i in 1..=n {
        for j in 1..=n {
            let same = owner[i - 1] == owner[j - 1];
            let expected = if same { Rational::zero() } else { Rational::one() };
            if let Some(w) = require(
                || vec![i, j],
                || format!("a[{i},{j}] = {}", if same { 0 } else { 1 }),
                a.get(i - 1, j - 1).clone(),
                Relation::Eq,
                expected,
            ) {
                return Verdict::No(w);
            }
        }
    }
    Verdict::Yes(part)
}
