//! Consecutive block partitions of `{1..n}` and the cut matrices they define.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{one, zero};

/// Ordered consecutive blocks `I_1, ..., I_q`, each stored as a 1-based
/// inclusive interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct BlockPartition {
    n: usize,
    blocks: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    n: usize,
    blocks: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cdw: Option<bool>,
}

impl TryFrom<PartitionRepr> for BlockPartition {
    type Error = Error;

    fn try_from(r: PartitionRepr) -> Result<Self> {
        BlockPartition::new(r.n, r.blocks.iter().map(|b| (b[0], b[1])).collect())
    }
}

impl From<BlockPartition> for PartitionRepr {
    fn from(p: BlockPartition) -> Self {
        PartitionRepr {
            n: p.n,
            cdw: Some(p.is_cdw()),
            blocks: p.blocks.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl BlockPartition {
    pub fn new(n: usize, blocks: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("partition of an empty set".into()));
        }
        let mut next = 1;
        for &(lo, hi) in &blocks {
            if lo != next || hi < lo {
                return Err(Error::OutOfRange(format!(
                    "blocks {blocks:?} are not consecutive intervals covering 1..{n}"
                )));
            }
            next = hi + 1;
        }
        if next != n + 1 {
            return Err(Error::OutOfRange(format!(
                "blocks {blocks:?} do not cover 1..{n}"
            )));
        }
        Ok(Self { n, blocks })
    }

    /// Blocks with the given sizes, in order.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let mut blocks = Vec::with_capacity(sizes.len());
        let mut lo = 1;
        for &s in sizes {
            if s == 0 {
                return Err(Error::OutOfRange("empty block".into()));
            }
            blocks.push((lo, lo + s - 1));
            lo += s;
        }
        Self::new(lo - 1, blocks)
    }

    /// The partition of `A^{k,l}`: `{k..l}` is the only block with more than one element.
    pub fn single_cut(n: usize, k: usize, l: usize) -> Result<Self> {
        if !(1 <= k && k <= l && l <= n) {
            return Err(Error::OutOfRange(format!("cut {{{k}..{l}}} outside 1..{n}")));
        }
        let mut blocks: Vec<(usize, usize)> = (1..k).map(|i| (i, i)).collect();
        blocks.push((k, l));
        blocks.extend((l + 1..=n).map(|i| (i, i)));
        Self::new(n, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|&(a, b)| b - a + 1).collect()
    }

    /// Block sizes are non-decreasing.
    pub fn is_cdw(&self) -> bool {
        self.sizes().windows(2).all(|w| w[0] <= w[1])
    }

    /// Index of the block containing the 1-based element `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.blocks
            .iter()
            .position(|&(a, b)| a <= i && i <= b)
            .expect("element outside the partition")
    }

    /// Number of blocks with at least two elements.
    pub fn multi_blocks(&self) -> usize {
        self.blocks.iter().filter(|&&(a, b)| b > a).count()
    }

    /// 0 inside diagonal blocks, 1 elsewhere.
    pub fn cut_matrix(&self) -> ExactMatrix {
        let owner: Vec<usize> = (1..=self.n).map(|i| self.block_of(i)).collect();
        ExactMatrix::from_fn(self.n, |i, j| if owner[i] == owner[j] { zero() } else { one() })
    }
}

impl std::fmt::Display for BlockPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&(a, b)| {
                let v: Vec<String> = (a..=b).map(|x| x.to_string()).collect();
                format!("{{{}}}", v.join(","))
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}
