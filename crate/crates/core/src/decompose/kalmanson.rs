use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{cut_weight_any, ConicDecomposition, Term};
use crate::blocks::BlockPartition;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{self, Rational};
use crate::recognize::kalmanson_adjacent_conditions;
use crate::recognize::{
    check_kalmanson, check_robinson, check_sum_family, Relation, SumCertificate, SumVariant,
    Verdict, Witness,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientKind {
    /// Interior cut `A^{k,l}`, `2 <= k < l <= n-1`.
    Delta,
    /// Left cut `A^{1,i}`.
    Alpha,
    /// Right cut `A^{i+1,n}`.
    Beta,
}

/// One cut weight together with the cut `A^{k,l}` it multiplies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCoefficient {
    pub kind: CoefficientKind,
    /// The subscript of the weight: `(k, l)` for delta, `(i, i)` for alpha and beta.
    pub index: (usize, usize),
    /// The block `{k..l}` of the cut.
    pub cut: (usize, usize),
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
}

impl CutCoefficient {
    pub fn partition(&self, n: usize) -> BlockPartition {
        BlockPartition::single_cut(n, self.cut.0, self.cut.1).expect("cut inside 1..n")
    }
}

/// `C = S + Σ weight · A^{cut}` with `S` a weak sum matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KalmansonDecomposition {
    pub n: usize,
    /// Every coefficient of the representation, zeros included.
    pub coefficients: Vec<CutCoefficient>,
    /// `S[i,j] = gamma_i + gamma_j` for `i != j`.
    #[serde(with = "rational::serde_vec")]
    pub gamma: Vec<Rational>,
    #[serde(skip)]
    pub residual: Option<ExactMatrix>,
}

impl KalmansonDecomposition {
    pub fn coefficient(&self, kind: CoefficientKind, index: (usize, usize)) -> Rational {
        self.coefficients
            .iter()
            .find(|c| c.kind == kind && c.index == index)
            .map_or_else(Rational::zero, |c| c.weight.clone())
    }

    /// Weak-sum part plus every cut, with a zero diagonal.
    pub fn reconstruct(&self) -> ExactMatrix {
        let g = &self.gamma;
        let mut m = ExactMatrix::from_fn(self.n, |i, j| &g[i] + &g[j]);
        for c in &self.coefficients {
            if !c.weight.is_zero() {
                m.add_scaled(&c.weight, &c.partition(self.n).cut_matrix())
                    .expect("same dimension");
            }
        }
        m.with_diagonal(&Rational::zero())
    }
}

fn delta_coefficients(c: &ExactMatrix) -> Vec<CutCoefficient> {
    let n = c.n();
    let d = cut_weight_any(c);
    let mut out = Vec::new();
    for k in 2..n {
        for l in k + 1..n {
            out.push(CutCoefficient {
                kind: CoefficientKind::Delta,
                index: (k, l),
                cut: (k, l),
                weight: d.get(k, l).clone(),
            });
        }
    }
    out
}

fn alpha(c: &ExactMatrix, i: usize) -> CutCoefficient {
    CutCoefficient {
        kind: CoefficientKind::Alpha,
        index: (i, i),
        cut: (1, i),
        weight: c.get(i, 0) - c.get(i - 1, 0),
    }
}

fn beta(c: &ExactMatrix, i: usize) -> CutCoefficient {
    let n = c.n();
    CutCoefficient {
        kind: CoefficientKind::Beta,
        index: (i, i),
        cut: (i + 1, n),
        weight: c.get(i - 1, n - 1) - c.get(i, n - 1),
    }
}

fn subtract_all(c: &ExactMatrix, coefs: &[CutCoefficient]) -> ExactMatrix {
    let mut r = c.clone();
    for k in coefs {
        if !k.weight.is_zero() {
            r.add_scaled(&-k.weight.clone(), &k.partition(c.n()).cut_matrix())
                .expect("same dimension");
        }
    }
    r
}

/// Interior cuts plus boundary pairs `alpha_i A^{1,i} + beta_i A^{i+1,n}`
/// for `2 <= i <= n-2`, with a weak sum residual.
pub fn kalmanson_decomposition(c: &ExactMatrix) -> Result<KalmansonDecomposition> {
    if let Verdict::No(w) = check_kalmanson(c)? {
        return Err(Error::precondition("matrix is not Kalmanson", Some(w)));
    }
    let n = c.n();
    let mut coefs = delta_coefficients(c);
    for i in 2..n.saturating_sub(1) {
        coefs.push(alpha(c, i));
        coefs.push(beta(c, i));
    }
    let residual = subtract_all(c, &coefs);
    let gamma = match weak_sum_gammas(&residual)? {
        Verdict::Yes(g) => g,
        Verdict::No(w) => {
            return Err(Error::Internal(format!("Kalmanson residual is not a weak sum: {w}")))
        }
    };
    Ok(KalmansonDecomposition {
        n,
        coefficients: coefs,
        gamma,
        residual: Some(residual),
    })
}

/// Cuts with nonnegative weights plus a weak constant offset. Terms are
/// ordered interior cuts first, then `alpha_i` before `beta_i` for
/// increasing `i`; zero weights are dropped.
pub fn robinson_kalmanson_decomposition(c: &ExactMatrix) -> Result<ConicDecomposition> {
    if let Verdict::No(w) = check_kalmanson(c)? {
        return Err(Error::precondition("matrix is not Kalmanson", Some(w)));
    }
    if let Verdict::No(w) = check_robinson(c)? {
        return Err(Error::precondition("matrix is not Robinson", Some(w)));
    }
    let n = c.n();
    let mut coefs = delta_coefficients(c);
    for i in 1..n {
        if i >= 2 {
            coefs.push(alpha(c, i));
        }
        if i + 2 <= n {
            coefs.push(beta(c, i));
        }
    }
    if let Some(bad) = coefs.iter().find(|k| k.weight.is_negative()) {
        return Err(Error::Internal(format!(
            "negative cut weight {} on A^{{{},{}}} of a Robinson and Kalmanson matrix",
            rational::format(&bad.weight),
            bad.cut.0,
            bad.cut.1
        )));
    }
    let residual = subtract_all(c, &coefs);
    let offset = match check_sum_family(&residual, SumVariant::WeakConstant)? {
        Verdict::Yes(SumCertificate::Constant { value }) => value,
        Verdict::Yes(_) => unreachable!(),
        Verdict::No(w) => {
            return Err(Error::Internal(format!("residual is not weak constant: {w}")))
        }
    };
    let terms = coefs
        .into_iter()
        .filter(|k| !k.weight.is_zero())
        .map(|k| Term {
            blocks: k.partition(n),
            weight: k.weight,
        })
        .collect();
    let out = ConicDecomposition {
        n,
        offset,
        terms,
        residual_gammas: None,
    };
    out.check_positive()?;
    Ok(out)
}

/// `gamma` with `c[i,j] = gamma_i + gamma_j` for all `i < j`.
pub fn weak_sum_parameters(c: &ExactMatrix) -> Result<Vec<Rational>> {
    match weak_sum_gammas(c)? {
        Verdict::Yes(g) => Ok(g),
        Verdict::No(w) => Err(Error::precondition(
            "an adjacent Kalmanson condition is not tight",
            Some(w),
        )),
    }
}

/// Verdict form of [`weak_sum_parameters`]: every adjacent Kalmanson
/// condition must hold with equality. Then `b_i = c[i+1,j] - c[i,j]` is the
/// same for all `j` outside `{i, i+1}` and
/// `gamma_1 = (c[1,2] - b_1) / 2`, `gamma_i = gamma_1 + b_1 + ... + b_{i-1}`.
pub(crate) fn weak_sum_gammas(c: &ExactMatrix) -> Result<Verdict<Vec<Rational>>> {
    c.require_symmetric()?;
    let n = c.n();
    let at = |i: usize, j: usize| c.get(i - 1, j - 1).clone();
    if let Some(w) = kalmanson_adjacent_conditions(c)
        .into_iter()
        .find(|w| w.lhs != w.rhs)
    {
        return Ok(Verdict::No(Witness {
            relation: Relation::Eq,
            inequality: w.inequality.replace("<=", "="),
            ..w
        }));
    }
    let gamma = match n {
        1 => vec![Rational::zero()],
        2 => {
            let h = at(1, 2) / BigRational::from_integer(2.into());
            vec![h.clone(), h]
        }
        _ => {
            // Any j outside {i, i+1}: 3 for i = 1, otherwise 1.
            let b = |i: usize| {
                let j = if i == 1 { 3 } else { 1 };
                at(i + 1, j) - at(i, j)
            };
            let mut g = Vec::with_capacity(n);
            g.push((at(1, 2) - b(1)) / BigRational::from_integer(2.into()));
            for i in 1..n {
                let next = &g[i - 1] + b(i);
                g.push(next);
            }
            g
        }
    };
    for i in 1..=n {
        for j in i + 1..=n {
            if at(i, j) != &gamma[i - 1] + &gamma[j - 1] {
                return Err(Error::Internal(format!(
                    "tight adjacent conditions but c[{i},{j}] is not gamma_{i} + gamma_{j}"
                )));
            }
        }
    }
    Ok(Verdict::Yes(gamma))
}
