//! Dense exact matrices, permutations and the QAP objective.
//!
//! Storage is 0-based. Anything that leaves the process (files, reports,
//! permutation image lists) is 1-based.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(n: usize, data: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("matrix dimension must be at least 1".into()));
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        Self {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn constant(n: usize, v: Rational) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        Self {
            n,
            data: vec![v; n * n],
        }
    }

    /// Builds from a 0-based cell function.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds from integer rows; panics on ragged input (test and fixture helper).
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let n = rows.len();
        for r in rows {
            assert_eq!(r.as_ref().len(), n, "rows must form a square matrix");
        }
        Self::from_fn(n, |i, j| rational::int(rows[i].as_ref()[j]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    /// First asymmetric cell `(i, j)` with `i < j`, 1-based.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    pub fn require_symmetric(&self) -> Result<()> {
        match self.asymmetry() {
            Some((i, j)) => Err(Error::NotSymmetric { i, j }),
            None => Ok(()),
        }
    }

    pub fn require_same_n(&self, other: &ExactMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<Self> {
        self.require_same_n(other)?;
        Ok(Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<Self> {
        self.require_same_n(other)?;
        Ok(Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// `self += k * other`, in place.
    pub fn add_scaled(&mut self, k: &Rational, other: &ExactMatrix) -> Result<()> {
        self.require_same_n(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
        Ok(())
    }

    /// Copy with every diagonal entry set to `v`.
    pub fn with_diagonal(&self, v: &Rational) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Equality ignoring the main diagonal.
    pub fn eq_off_diagonal(&self, other: &ExactMatrix) -> bool {
        self.n == other.n
            && (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == other.get(i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn max_abs(&self) -> Rational {
        self.data
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Canonical text form (see the module docs of [`crate::matrix`]).
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(rational::format).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the matrix text format: first non-comment line is `n`, then
    /// `n` rows of `n` rationals. Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut data = Vec::new();
        let mut rows = 0usize;
        let mut last_line = 0usize;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            last_line = lineno;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens = tokens_with_columns(line);
            match n {
                None => {
                    let (col, tok) = tokens[0];
                    if tokens.len() != 1 {
                        return Err(parse_err(lineno, tokens[1].0, "expected a single dimension"));
                    }
                    let v: usize = tok
                        .parse()
                        .map_err(|_| parse_err(lineno, col, format!("invalid dimension {tok:?}")))?;
                    if v == 0 {
                        return Err(parse_err(lineno, col, "dimension must be at least 1"));
                    }
                    n = Some(v);
                }
                Some(n) => {
                    if rows == n {
                        return Err(parse_err(lineno, tokens[0].0, "more rows than the dimension"));
                    }
                    if tokens.len() != n {
                        let col = tokens.get(n).map_or(line.len() + 1, |t| t.0);
                        return Err(parse_err(
                            lineno,
                            col,
                            format!("expected {n} entries, found {}", tokens.len()),
                        ));
                    }
                    for (col, tok) in tokens {
                        let v = rational::parse(tok).map_err(|m| parse_err(lineno, col, m))?;
                        data.push(v);
                    }
                    rows += 1;
                }
            }
        }
        let n = n.ok_or_else(|| parse_err(last_line.max(1), 1, "missing dimension line"))?;
        if rows != n {
            return Err(parse_err(
                last_line + 1,
                1,
                format!("expected {n} rows, found {rows}"),
            ));
        }
        Self::new(n, data)
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens paired with their 1-based character column.
fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let col = |byte: usize| line[..byte].chars().count() + 1;
    for (b, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((col(s), &line[s..b]));
            }
        } else if start.is_none() {
            start = Some(b);
        }
    }
    if let Some(s) = start {
        out.push((col(s), &line[s..]));
    }
    out
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for ExactMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

// JSON form: a list of rows of exact rational strings.
impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| self.row(i).iter().map(rational::format).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(D::Error::custom(format!("row of length {} in a {n}x{n} matrix", row.len())));
            }
            for tok in row {
                data.push(rational::parse(tok).map_err(D::Error::custom)?);
            }
        }
        ExactMatrix::new(n, data).map_err(D::Error::custom)
    }
}

/// A bijection of `{1..n}`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// From a 1-based image list such as `[2, 3, 1]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.iter().any(|&v| v == 0) {
            return Err(Error::InvalidPermutation("images are 1-based".into()));
        }
        Self::from_zero_based(images.iter().map(|v| v - 1).collect())
    }

    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{:?} is not a bijection of 1..{n}",
                    images.iter().map(|v| v + 1).collect::<Vec<_>>()
                )));
            }
        }
        Ok(Self { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based index.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn zero_based(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(Self {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        })
    }

    pub fn invert(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Self { images: inv }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn invert(p: &Permutation) -> Permutation {
    p.invert()
}

/// `Σ_{i,j} A[p(i), p(j)] · B[i, j]`.
pub fn qap_objective(a: &ExactMatrix, b: &ExactMatrix, p: &Permutation) -> Result<Rational> {
    a.require_same_n(b)?;
    if p.n() != a.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: p.n(),
        });
    }
    let n = a.n();
    let mut total = Rational::zero();
    for i in 0..n {
        let pi = p.at(i);
        for j in 0..n {
            let bij = b.get(i, j);
            if !bij.is_zero() {
                total += a.get(pi, p.at(j)) * bij;
            }
        }
    }
    Ok(total)
}

/// The simultaneously permuted matrix `A^p` with `result[i,j] = A[p(i), p(j)]`.
pub fn apply_permutation(a: &ExactMatrix, p: &Permutation) -> Result<ExactMatrix> {
    if p.n() != a.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: p.n(),
        });
    }
    Ok(ExactMatrix::from_fn(a.n(), |i, j| a.get(p.at(i), p.at(j)).clone()))
}
