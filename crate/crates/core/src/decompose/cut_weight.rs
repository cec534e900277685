use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{self, Rational};

/// The coefficients `d[i,j]` (1-based, `i < j`) of the cuts `A^{i,j}`:
///
/// * `d[i,j] = c[i-1,j] + c[i,j+1] - c[i,j] - c[i-1,j+1]` for `2 <= i < j <= n-1`
/// * `d[1,i] = c[i+1,1] - c[i,1]` for `2 <= i <= n-1`
/// * `d[i,n] = c[i-1,n] - c[i,n]` for `2 <= i <= n-1`
///
/// Every other cell is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CutWeightRepr", try_from = "CutWeightRepr")]
pub struct CutWeightMatrix {
    n: usize,
    d: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct CutWeightRepr {
    n: usize,
    entries: Vec<CutWeightEntry>,
}

#[derive(Serialize, Deserialize)]
struct CutWeightEntry {
    i: usize,
    j: usize,
    #[serde(with = "rational::serde_str")]
    value: Rational,
}

impl From<CutWeightMatrix> for CutWeightRepr {
    fn from(d: CutWeightMatrix) -> Self {
        CutWeightRepr {
            n: d.n,
            entries: d
                .nonzero()
                .map(|(i, j, value)| CutWeightEntry { i, j, value: value.clone() })
                .collect(),
        }
    }
}

impl TryFrom<CutWeightRepr> for CutWeightMatrix {
    type Error = Error;

    fn try_from(r: CutWeightRepr) -> Result<Self> {
        let mut d = CutWeightMatrix::zero(r.n);
        for e in r.entries {
            d.set(e.i, e.j, e.value)?;
        }
        Ok(d)
    }
}

impl CutWeightMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            d: vec![Rational::zero(); n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether `(i, j)` is one of the coefficient positions.
    pub fn is_position(n: usize, i: usize, j: usize) -> bool {
        if !(1 <= i && i < j && j <= n) {
            return false;
        }
        let interior = 2 <= i && j < n;
        let first_row = i == 1 && (2..n).contains(&j);
        let last_col = j == n && (2..n).contains(&i);
        interior || first_row || last_col
    }

    /// `d[i,j]`, 1-based; zero outside the coefficient positions.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        static ZERO: std::sync::OnceLock<Rational> = std::sync::OnceLock::new();
        if (1..=self.n).contains(&i) && (1..=self.n).contains(&j) {
            &self.d[(i - 1) * self.n + (j - 1)]
        } else {
            ZERO.get_or_init(Rational::zero)
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) -> Result<()> {
        if !Self::is_position(self.n, i, j) {
            return Err(Error::OutOfRange(format!(
                "({i},{j}) is not a cut-weight position for n = {}",
                self.n
            )));
        }
        self.d[(i - 1) * self.n + (j - 1)] = v;
        Ok(())
    }

    /// All coefficient positions with their values, row-major.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        let n = self.n;
        (1..=n)
            .flat_map(move |i| (1..=n).map(move |j| (i, j)))
            .filter(move |&(i, j)| Self::is_position(n, i, j))
            .map(move |(i, j)| (i, j, self.get(i, j)))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.positions().filter(|(_, _, v)| !v.is_zero())
    }

    /// First negative coefficient, row-major.
    pub fn first_negative(&self) -> Option<(usize, usize, Rational)> {
        self.positions()
            .find(|(_, _, v)| v.is_negative())
            .map(|(i, j, v)| (i, j, v.clone()))
    }
}

/// Cut-weight matrix of a symmetric matrix with `n >= 4`.
pub fn cut_weight_matrix(c: &ExactMatrix) -> Result<CutWeightMatrix> {
    c.require_symmetric()?;
    if c.n() < 4 {
        return Err(Error::OutOfRange(format!(
            "cut-weight matrix needs n >= 4, got {}",
            c.n()
        )));
    }
    Ok(cut_weight_any(c))
}

/// Same closed forms for any `n`; the ranges simply empty out for small `n`.
pub(crate) fn cut_weight_any(c: &ExactMatrix) -> CutWeightMatrix {
    let n = c.n();
    let at = |i: usize, j: usize| c.get(i - 1, j - 1);
    let mut d = CutWeightMatrix::zero(n);
    for i in 2..n {
        for j in i + 1..n {
            let v = at(i - 1, j) + at(i, j + 1) - at(i, j) - at(i - 1, j + 1);
            d.set(i, j, v).expect("interior position");
        }
        d.set(1, i, at(i + 1, 1) - at(i, 1)).expect("first row position");
        d.set(i, n, at(i - 1, n) - at(i, n)).expect("last column position");
    }
    d
}
