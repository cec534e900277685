use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{cut_weight_any, ConicDecomposition, CutWeightMatrix, Term};
use crate::blocks::BlockPartition;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{self, Rational};
use crate::recognize::{
    check_kalmanson, check_robinson, check_sum_family, require, Relation, SumCertificate,
    SumVariant, Verdict, Witness,
};

/// Whether the cut weights can be regrouped into cuts in CDW normal form:
/// for `2 <= k <= n-1` and `1 <= l <= k-1`,
///
/// `Σ_{i=1..l} d[i,k] <= Σ_{j=2k+1-l..n} d[k+1,j]`
///
/// (an empty right-hand sum is zero). The witness of a rejection is the first
/// failing `(k, l)`.
///
/// For `k = n-1` the right-hand side is always empty, which forbids any cut
/// `A^{i,n-1}`: its block would be followed by the singleton `{n}`.
pub fn cdw_feasibility(d: &CutWeightMatrix) -> Result<Verdict> {
    if let Some((i, j, v)) = d.first_negative() {
        return Err(Error::precondition(
            "cut weights must be nonnegative",
            Some(Witness::new(
                vec![i, j],
                format!("d[{i},{j}] >= 0"),
                v,
                Relation::Ge,
                Rational::zero(),
            )),
        ));
    }
    let n = d.n();
    for k in 2..n {
        for l in 1..k {
            let lhs: Rational = (1..=l).map(|i| d.get(i, k)).sum();
            let from = 2 * k + 1 - l;
            let rhs: Rational = (from..=n).map(|j| d.get(k + 1, j)).sum();
            if let Some(w) = require(
                || vec![k, l],
                || {
                    format!(
                        "sum_{{i=1..{l}}} d[i,{k}] <= sum_{{j={from}..{n}}} d[{},j]",
                        k + 1
                    )
                },
                lhs,
                Relation::Le,
                rhs,
            ) {
                return Ok(Verdict::No(w));
            }
        }
    }
    Ok(Verdict::Yes(()))
}

/// Feasibility straight from a Robinson and Kalmanson matrix of any size.
pub(crate) fn cdw_feasibility_any(c: &ExactMatrix) -> Result<Verdict> {
    cdw_feasibility(&cut_weight_any(c))
}

/// Multigraph on nodes `1..=n+1` with an edge `(i, j+1)` of multiplicity
/// `d[i,j]` for every positive cut weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutWeightMultigraph {
    n: usize,
    edges: BTreeMap<(usize, usize), Rational>,
}

/// One extracted path, its multiplicity and the CDW cut it stands for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeeledPath {
    pub nodes: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
    pub blocks: BlockPartition,
}

impl CutWeightMultigraph {
    pub fn new(d: &CutWeightMatrix) -> Result<Self> {
        if let Some((i, j, _)) = d.first_negative() {
            return Err(Error::precondition(
                format!("negative cut weight at d[{i},{j}]"),
                None,
            ));
        }
        let edges = d
            .nonzero()
            .map(|(i, j, v)| ((i, j + 1), v.clone()))
            .collect();
        Ok(Self { n: d.n(), edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `(tail, head, multiplicity)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.edges.iter().map(|(&(t, h), m)| (t, h, m))
    }

    /// Total multiplicity of edges into `node` with length at least `len`.
    pub fn entering_at_least(&self, node: usize, len: usize) -> Rational {
        self.edges()
            .filter(|&(t, h, _)| h == node && h - t >= len)
            .map(|(_, _, m)| m.clone())
            .sum()
    }

    /// Total multiplicity of edges out of `node` with length at least `len`.
    pub fn leaving_at_least(&self, node: usize, len: usize) -> Rational {
        self.edges()
            .filter(|&(t, h, _)| t == node && h - t >= len)
            .map(|(_, _, m)| m.clone())
            .sum()
    }

    /// First `(node, len)` at which more weight enters than leaves, scanning
    /// the inner nodes `2..=n`.
    pub fn balance_violation(&self) -> Option<(usize, usize)> {
        for node in 2..=self.n {
            for len in 2..=node {
                if self.entering_at_least(node, len) > self.leaving_at_least(node, len) {
                    return Some((node, len));
                }
            }
        }
        None
    }

    /// Extracts one path ending at `n+1` and removes it with the minimum
    /// multiplicity along it. Walking backwards from `n+1`, each step takes
    /// the longest entering edge whose length does not exceed the previous
    /// one. Edges entering a node with equal length share their tail, so the
    /// choice is unique.
    pub fn peel(&mut self) -> Result<Option<PeeledPath>> {
        if self.is_empty() {
            return Ok(None);
        }
        let sink = self.n + 1;
        let mut nodes = vec![sink];
        let mut cur = sink;
        let mut max_len = usize::MAX;
        loop {
            let lo = cur.saturating_sub(max_len).max(1);
            let next = (lo..cur.saturating_sub(1)).find(|&t| self.edges.contains_key(&(t, cur)));
            match next {
                Some(t) => {
                    max_len = cur - t;
                    nodes.push(t);
                    cur = t;
                }
                None => break,
            }
        }
        if nodes.len() == 1 {
            return Err(Error::Internal(
                "no edge enters the sink of a nonempty cut-weight multigraph".into(),
            ));
        }
        nodes.reverse();
        let weight = nodes
            .windows(2)
            .map(|w| self.edges[&(w[0], w[1])].clone())
            .min()
            .expect("path has an edge");
        for w in nodes.windows(2) {
            let key = (w[0], w[1]);
            let m = self.edges.get_mut(&key).expect("edge on path");
            *m -= &weight;
            if m.is_zero() {
                self.edges.remove(&key);
            }
        }
        let mut blocks: Vec<(usize, usize)> = (1..nodes[0]).map(|i| (i, i)).collect();
        blocks.extend(nodes.windows(2).map(|w| (w[0], w[1] - 1)));
        let blocks = BlockPartition::new(self.n, blocks)?;
        Ok(Some(PeeledPath {
            nodes,
            weight,
            blocks,
        }))
    }
}

/// Decomposes a Robinson and Kalmanson matrix into cut matrices in CDW
/// normal form plus a weak constant offset, or reports the violated
/// feasibility condition.
pub fn cdw_decomposition(c: &ExactMatrix) -> Result<Verdict<ConicDecomposition>> {
    if let Verdict::No(w) = check_kalmanson(c)? {
        return Err(Error::precondition("matrix is not Kalmanson", Some(w)));
    }
    if let Verdict::No(w) = check_robinson(c)? {
        return Err(Error::precondition("matrix is not Robinson", Some(w)));
    }
    let n = c.n();
    let d = cut_weight_any(c);
    if d.first_negative().is_some() {
        return Err(Error::Internal(
            "negative cut weight on a Robinson and Kalmanson matrix".into(),
        ));
    }
    if let Verdict::No(w) = cdw_feasibility(&d)? {
        return Ok(Verdict::No(w));
    }
    let mut g = CutWeightMultigraph::new(&d)?;
    let mut terms = Vec::new();
    while let Some(p) = g.peel()? {
        terms.push(Term {
            weight: p.weight,
            blocks: p.blocks,
        });
    }
    let mut residual = c.clone();
    for t in &terms {
        residual.add_scaled(&-t.weight.clone(), &t.blocks.cut_matrix())?;
    }
    let offset = match check_sum_family(&residual, SumVariant::WeakConstant)? {
        Verdict::Yes(SumCertificate::Constant { value }) => value,
        Verdict::Yes(_) => unreachable!(),
        Verdict::No(w) => {
            return Err(Error::Internal(format!("peeling left a non-constant residual: {w}")))
        }
    };
    let out = ConicDecomposition {
        n,
        offset,
        terms,
        residual_gammas: None,
    };
    out.check_positive()?;
    if !out.all_cdw() || out.terms.iter().any(|t| t.weight.is_negative()) {
        return Err(Error::Internal("peeling produced a non-CDW term".into()));
    }
    Ok(Verdict::Yes(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::cut_weight_matrix;
    use crate::rational::int;

    fn sec42() -> ExactMatrix {
        ExactMatrix::from_i64_rows(&[
            [0, 1, 2, 3, 3, 3],
            [1, 0, 2, 3, 3, 3],
            [2, 2, 0, 2, 3, 3],
            [3, 3, 2, 0, 2, 2],
            [3, 3, 3, 2, 0, 1],
            [3, 3, 3, 2, 1, 0],
        ])
    }

    #[test]
    fn example_paths() {
        let d = cut_weight_matrix(&sec42()).unwrap();
        let mut g = CutWeightMultigraph::new(&d).unwrap();
        let p1 = g.peel().unwrap().unwrap();
        assert_eq!(p1.nodes, vec![1, 4, 7]);
        assert_eq!(p1.weight, int(1));
        assert_eq!(p1.blocks.to_string(), "{1,2,3} {4,5,6}");
        assert!(g.balance_violation().is_none());
        let p2 = g.peel().unwrap().unwrap();
        assert_eq!(p2.nodes, vec![1, 3, 5, 7]);
        assert_eq!(p2.blocks.to_string(), "{1,2} {3,4} {5,6}");
        assert!(g.peel().unwrap().is_none());
    }

    #[test]
    fn example_decomposition() {
        let d = cdw_decomposition(&sec42()).unwrap().ok().unwrap();
        assert_eq!(d.offset, int(1));
        assert_eq!(d.terms.len(), 2);
        assert!(d.reconstructs(&sec42()));
    }

    #[test]
    fn single_non_cdw_cut_is_rejected() {
        let c = BlockPartition::single_cut(6, 1, 2).unwrap().cut_matrix();
        let d = cut_weight_matrix(&c).unwrap();
        let w = cdw_feasibility(&d).unwrap().witness().cloned().unwrap();
        assert_eq!(w.indices, vec![2, 1]);
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (int(1), int(0)));
        let v = cdw_decomposition(&c).unwrap();
        assert_eq!(v.witness().unwrap().indices, vec![2, 1]);
    }

    #[test]
    fn cut_before_last_singleton_is_rejected() {
        // A^{1,3} at n = 4 has blocks {1,2,3},{4}: only the k = n-1 row catches it.
        let c = BlockPartition::single_cut(4, 1, 3).unwrap().cut_matrix();
        let w = cdw_feasibility(&cut_weight_matrix(&c).unwrap())
            .unwrap()
            .witness()
            .cloned()
            .unwrap();
        assert_eq!(w.indices, vec![3, 1]);
    }

    #[test]
    fn zero_weights_are_feasible() {
        assert!(cdw_feasibility(&CutWeightMatrix::zero(7)).unwrap().is_yes());
    }

    #[test]
    fn negative_weights_are_an_error() {
        let mut d = CutWeightMatrix::zero(5);
        d.set(2, 3, int(-1)).unwrap();
        assert!(matches!(cdw_feasibility(&d), Err(Error::Precondition { .. })));
    }

    #[test]
    fn small_cdw_matrices() {
        let c = BlockPartition::from_sizes(&[1, 2]).unwrap().cut_matrix();
        let d = cdw_decomposition(&c).unwrap().ok().unwrap();
        assert!(d.reconstructs(&c));
        let c = BlockPartition::from_sizes(&[2, 1]).unwrap().cut_matrix();
        assert!(!cdw_decomposition(&c).unwrap().is_yes());
    }
}
