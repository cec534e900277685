//! Conic decompositions into cut matrices.
//!
//! A cut `A^{k,l}` is the cut matrix whose only block with more than one
//! element is `{k..l}`. Its coefficient in the cut-weight matrix sits at
//! `d[k,l]` and it becomes the multigraph edge `(k, l+1)`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::blocks::BlockPartition;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{self, Rational};

mod benevolent;
mod cdw;
mod cut_weight;
mod kalmanson;

pub use benevolent::{benevolent_split, BenevolentSplit};
pub use cdw::{cdw_decomposition, cdw_feasibility, CutWeightMultigraph, PeeledPath};
pub(crate) use cdw::cdw_feasibility_any;
pub use cut_weight::{cut_weight_matrix, CutWeightMatrix};
pub(crate) use cut_weight::cut_weight_any;
pub use kalmanson::{
    kalmanson_decomposition, robinson_kalmanson_decomposition, weak_sum_parameters,
    CoefficientKind, CutCoefficient, KalmansonDecomposition,
};
pub(crate) use kalmanson::weak_sum_gammas;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
    pub blocks: BlockPartition,
}

/// `offset` on every off-diagonal cell plus a positive combination of cut matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicDecomposition {
    pub n: usize,
    #[serde(with = "rational::serde_str")]
    pub offset: Rational,
    pub terms: Vec<Term>,
    /// Present when the residual is a weak sum `gamma_i + gamma_j` rather than a constant.
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "rational::serde_opt_vec"
    )]
    pub residual_gammas: Option<Vec<Rational>>,
}

impl ConicDecomposition {
    /// Rebuilds the matrix with a zero diagonal.
    pub fn reconstruct(&self) -> ExactMatrix {
        let n = self.n;
        let mut m = match &self.residual_gammas {
            Some(g) => ExactMatrix::from_fn(n, |i, j| &g[i] + &g[j] + &self.offset),
            None => ExactMatrix::constant(n, self.offset.clone()),
        };
        for t in &self.terms {
            m.add_scaled(&t.weight, &t.blocks.cut_matrix())
                .expect("term dimension matches");
        }
        m.with_diagonal(&Rational::zero())
    }

    /// Off-diagonal agreement with `c`.
    pub fn reconstructs(&self, c: &ExactMatrix) -> bool {
        self.reconstruct().eq_off_diagonal(c)
    }

    pub fn all_cdw(&self) -> bool {
        self.terms.iter().all(|t| t.blocks.is_cdw())
    }

    pub(crate) fn check_positive(&self) -> Result<()> {
        match self.terms.iter().find(|t| !t.weight.is_positive()) {
            Some(t) => Err(Error::Internal(format!(
                "non-positive weight {} on cut {}",
                rational::format(&t.weight),
                t.blocks
            ))),
            None => Ok(()),
        }
    }
}

/// Hex SHA-256 of the canonical text form, used to fingerprint rebuilt matrices.
pub fn matrix_hash(m: &ExactMatrix) -> String {
    let digest = Sha256::digest(m.to_text().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
