use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{require, Relation, Verdict, Witness};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{self, Rational};

/// Generating function `f(-(n-1)..=(n-1))` of a Toeplitz matrix, `b[i,j] = f(i-j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProfileRepr", into = "ProfileRepr")]
pub struct ToeplitzProfile {
    n: usize,
    f: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToeplitzFlag {
    Symmetric,
    Circulant,
    Simple,
    Dw,
    UpBenevolent,
    DownBenevolent,
}

impl ToeplitzFlag {
    pub const ALL: [ToeplitzFlag; 6] = [
        ToeplitzFlag::Symmetric,
        ToeplitzFlag::Circulant,
        ToeplitzFlag::Simple,
        ToeplitzFlag::Dw,
        ToeplitzFlag::UpBenevolent,
        ToeplitzFlag::DownBenevolent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ToeplitzFlag::Symmetric => "symmetric",
            ToeplitzFlag::Circulant => "circulant",
            ToeplitzFlag::Simple => "simple",
            ToeplitzFlag::Dw => "dw",
            ToeplitzFlag::UpBenevolent => "up_benevolent",
            ToeplitzFlag::DownBenevolent => "down_benevolent",
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    n: usize,
    /// `f(-(n-1)), ..., f(n-1)`.
    #[serde(with = "rational::serde_vec")]
    f: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    flags: Option<Vec<ToeplitzFlag>>,
}

impl TryFrom<ProfileRepr> for ToeplitzProfile {
    type Error = Error;

    fn try_from(r: ProfileRepr) -> Result<Self> {
        ToeplitzProfile::new(r.n, r.f)
    }
}

impl From<ToeplitzProfile> for ProfileRepr {
    fn from(p: ToeplitzProfile) -> Self {
        ProfileRepr {
            n: p.n,
            flags: Some(p.flags()),
            f: p.f,
        }
    }
}

impl ToeplitzProfile {
    /// `f` lists `f(-(n-1)), ..., f(n-1)`.
    pub fn new(n: usize, f: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("profile of dimension 0".into()));
        }
        if f.len() != 2 * n - 1 {
            return Err(Error::DimensionMismatch {
                expected: 2 * n - 1,
                found: f.len(),
            });
        }
        Ok(Self { n, f })
    }

    /// Symmetric profile from `f(0), f(1), ..., f(n-1)`.
    pub fn symmetric(half: Vec<Rational>) -> Result<Self> {
        let n = half.len();
        if n == 0 {
            return Err(Error::OutOfRange("profile of dimension 0".into()));
        }
        let mut f: Vec<Rational> = half[1..].iter().rev().cloned().collect();
        f.extend(half);
        Self::new(n, f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `f(k)` for `-(n-1) <= k <= n-1`.
    pub fn f(&self, k: isize) -> &Rational {
        &self.f[(k + self.n as isize - 1) as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.f
    }

    /// `f(1), ..., f(n-1)`.
    pub fn positive_half(&self) -> Vec<Rational> {
        (1..self.n as isize).map(|k| self.f(k).clone()).collect()
    }

    /// `ceil((n-1)/2)`, the turning point of the benevolent classes.
    pub fn mid(&self) -> usize {
        self.n / 2
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, |i, j| self.f(i as isize - j as isize).clone())
    }

    pub fn has(&self, flag: ToeplitzFlag) -> bool {
        self.check(flag).is_yes()
    }

    pub fn flags(&self) -> Vec<ToeplitzFlag> {
        ToeplitzFlag::ALL.into_iter().filter(|&fl| self.has(fl)).collect()
    }

    /// Checks one class condition; witnesses carry diagonal offsets `k`.
    pub fn check(&self, flag: ToeplitzFlag) -> Verdict {
        use ToeplitzFlag::*;
        let r = match flag {
            Symmetric => self.symmetric_w(),
            Circulant => self.circulant_w(),
            Simple => self.simple_w(),
            Dw => self.dw_w(),
            UpBenevolent => self.benevolent_w(Relation::Le),
            DownBenevolent => self.benevolent_w(Relation::Ge),
        };
        r.map_or(Verdict::Yes(()), Verdict::No)
    }

    fn cmp(&self, a: isize, rel: Relation, b: isize) -> Option<Witness> {
        require(
            || vec_k(&[a, b]),
            || format!("f({a}) {} f({b})", rel.symbol()),
            self.f(a).clone(),
            rel,
            self.f(b).clone(),
        )
    }

    fn zero_diag(&self) -> Option<Witness> {
        require(
            || vec![0],
            || "f(0) = 0".to_string(),
            self.f(0).clone(),
            Relation::Eq,
            Rational::zero(),
        )
    }

    fn symmetric_w(&self) -> Option<Witness> {
        (1..self.n as isize).find_map(|k| self.cmp(k, Relation::Eq, -k))
    }

    fn circulant_w(&self) -> Option<Witness> {
        let n = self.n as isize;
        (1..n).find_map(|k| self.cmp(k, Relation::Eq, k - n))
    }

    fn monotone_up_to(&self, last: isize, rel: Relation) -> Option<Witness> {
        (1..last).find_map(|k| self.cmp(k, rel, k + 1))
    }

    fn simple_w(&self) -> Option<Witness> {
        self.symmetric_w()
            .or_else(|| self.zero_diag())
            .or_else(|| self.monotone_up_to(self.n as isize - 1, Relation::Ge))
    }

    fn dw_w(&self) -> Option<Witness> {
        let n = self.n as isize;
        let m = self.mid() as isize;
        self.symmetric_w()
            .or_else(|| self.zero_diag())
            .or_else(|| self.monotone_up_to(m, Relation::Ge))
            .or_else(|| (m + 1..n).find_map(|k| self.cmp(k, Relation::Eq, n - k)))
    }

    fn benevolent_w(&self, rel: Relation) -> Option<Witness> {
        let n = self.n as isize;
        let m = self.mid() as isize;
        self.symmetric_w()
            .or_else(|| self.zero_diag())
            .or_else(|| self.monotone_up_to(m, rel))
            .or_else(|| (1..=m).find_map(|k| self.cmp(k, rel, n - k)))
    }
}

// Profile witnesses carry diagonal offsets; the sign lives in the inequality text.
fn vec_k(ks: &[isize]) -> Vec<usize> {
    ks.iter().map(|k| k.unsigned_abs()).collect()
}

/// Reads the generating function of a Toeplitz matrix, or reports the first
/// row-major cell `(i, j)` with `a[i,j] != a[i-1,j-1]`.
pub fn extract_toeplitz_profile(a: &ExactMatrix) -> Verdict<ToeplitzProfile> {
    let n = a.n();
    for i in 1..n {
        for j in 1..n {
            if let Some(w) = require(
                || vec![i + 1, j + 1],
                || format!("a[{},{}] = a[{i},{j}]", i + 1, j + 1),
                a.get(i, j).clone(),
                Relation::Eq,
                a.get(i - 1, j - 1).clone(),
            ) {
                return Verdict::No(w);
            }
        }
    }
    let f = (-(n as isize - 1)..n as isize)
        .map(|k| {
            if k >= 0 {
                a.get(k as usize, 0).clone()
            } else {
                a.get(0, (-k) as usize).clone()
            }
        })
        .collect();
    Verdict::Yes(ToeplitzProfile { n, f })
}
