use super::{Relation, Verdict, Witness};
use crate::error::Result;
use crate::matrix::ExactMatrix;

/// Kalmanson test through the adjacent characterization:
///
/// * `c[i,j+1] + c[i+1,j] <= c[i,j] + c[i+1,j+1]` for `1 <= i <= n-3`, `i+2 <= j <= n-1`
/// * `c[i,1] + c[i+1,n] <= c[i,n] + c[i+1,1]` for `2 <= i <= n-2`
///
/// The witness of a rejection is the lexicographically smallest index
/// quadruple among the violated conditions: `(i, i+1, j, j+1)` for the first
/// family and `(1, i, i+1, n)` for the second.
pub fn check_kalmanson(c: &ExactMatrix) -> Result<Verdict> {
    c.require_symmetric()?;
    Ok(kalmanson_adjacent_violations(c)
        .into_iter()
        .min_by(|a, b| a.indices.cmp(&b.indices))
        .map_or(Verdict::Yes(()), Verdict::No))
}

/// Every adjacent condition that fails, in no particular order.
pub fn kalmanson_adjacent_violations(c: &ExactMatrix) -> Vec<Witness> {
    adjacent_conditions(c)
        .into_iter()
        .filter(Witness::is_violation)
        .collect()
}

/// Every adjacent condition as a `lhs <= rhs` record, violated or not.
pub(crate) fn adjacent_conditions(c: &ExactMatrix) -> Vec<Witness> {
    let n = c.n();
    let at = |i: usize, j: usize| c.get(i - 1, j - 1).clone();
    let mut out = Vec::new();
    if n < 4 {
        return out;
    }
    for i in 1..=n - 3 {
        for j in i + 2..=n - 1 {
            out.push(Witness::new(
                vec![i, i + 1, j, j + 1],
                format!(
                    "c[{i},{}] + c[{},{j}] <= c[{i},{j}] + c[{},{}]",
                    j + 1,
                    i + 1,
                    i + 1,
                    j + 1
                ),
                at(i, j + 1) + at(i + 1, j),
                Relation::Le,
                at(i, j) + at(i + 1, j + 1),
            ));
        }
    }
    for i in 2..=n - 2 {
        out.push(Witness::new(
            vec![1, i, i + 1, n],
            format!("c[{i},1] + c[{},{n}] <= c[{i},{n}] + c[{},1]", i + 1, i + 1),
            at(i, 1) + at(i + 1, n),
            Relation::Le,
            at(i, n) + at(i + 1, 1),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::BlockPartition;

    #[test]
    fn small_sizes_are_vacuous() {
        for n in 1..4 {
            let a = ExactMatrix::from_fn(n, |i, j| crate::rational::int((i * 5 + j * 5) as i64));
            assert!(check_kalmanson(&a).unwrap().is_yes());
        }
    }

    #[test]
    fn cut_matrices_are_kalmanson() {
        for sizes in [vec![2, 1, 3], vec![1, 1, 1, 1, 1], vec![3, 3], vec![1, 4, 1]] {
            let a = BlockPartition::from_sizes(&sizes).unwrap().cut_matrix();
            assert!(check_kalmanson(&a).unwrap().is_yes(), "{sizes:?}");
        }
    }

    #[test]
    fn reports_first_quadruple() {
        // Negated cut matrix of {2,3}: violates the first family at (1,2,3,4).
        let a = BlockPartition::single_cut(5, 2, 3).unwrap().cut_matrix().neg();
        let w = check_kalmanson(&a).unwrap().witness().cloned().unwrap();
        assert_eq!(w.indices, vec![1, 2, 3, 4]);
        assert!(w.is_violation());
    }

    #[test]
    fn boundary_family_is_checked() {
        // -A^{1,2} only breaks the wrap-around condition at i = 2.
        let a = BlockPartition::single_cut(5, 1, 2).unwrap().cut_matrix().neg();
        let w = check_kalmanson(&a).unwrap().witness().cloned().unwrap();
        assert_eq!(w.indices, vec![1, 2, 3, 5]);
    }
}
