//! Constructors for the structured matrices and permutations, plus seeded
//! random members of each class.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::blocks::BlockPartition;
use crate::error::{Error, Result};
use crate::matrix::{apply_permutation, ExactMatrix, Permutation};
use crate::rational::{self, one, zero, Rational};
use crate::recognize::ToeplitzProfile;

mod random;

pub use random::{random_instance, GeneratedInstance, GenerationSpec, InstanceClass, RayTerm};

/// `<1, 3, 5, ..., 6, 4, 2>`: odd values ascending, then even values descending.
pub fn supnick_permutation(n: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=n).step_by(2).collect();
    v.extend((2..=n).rev().filter(|x| x % 2 == 0));
    Permutation::from_one_based(&v).expect("Supnick images form a bijection")
}

/// `σ_u = <u, u+1, ..., n, 1, ..., u-1>`.
pub fn cyclic_shift(n: usize, u: usize) -> Result<Permutation> {
    if !(1 <= u && u <= n) {
        return Err(Error::OutOfRange(format!("shift {u} outside 1..{n}")));
    }
    Permutation::from_zero_based((0..n).map(|i| (u - 1 + i) % n).collect())
}

fn check_pq(n: usize, p: usize, q: usize) -> Result<()> {
    if !(1 <= p && p <= q && q <= n) {
        return Err(Error::OutOfRange(format!(
            "ray indices need 1 <= p <= q <= n, got p = {p}, q = {q}, n = {n}"
        )));
    }
    Ok(())
}

/// `R^(p,q)`: ones on the bottom-right `p x q` corner. Rows and columns of
/// the corner may be given in either order here, so `R^(q,p)` is available too.
fn corner(n: usize, rows: usize, cols: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, |i, j| {
        if i + rows >= n && j + cols >= n {
            one()
        } else {
            zero()
        }
    })
}

/// Extremal rays of the monotone anti-Monge cones.
///
/// Non-symmetric: `R^(p,q)`, ones on rows `n-p+1..n` and columns `n-q+1..n`.
/// Symmetric: `R̄^(p,q) = R^(p,q) + R^(q,p)`, which for `p = q` is `2 R^(p,p)`.
pub fn extremal_anti_monge(n: usize, p: usize, q: usize, symmetric: bool) -> Result<ExactMatrix> {
    check_pq(n, p, q)?;
    let r = corner(n, p, q);
    if symmetric {
        r.add(&corner(n, q, p))
    } else {
        Ok(r)
    }
}

/// Same for a corner with `p > q` allowed (non-symmetric rays only).
pub fn corner_ray(n: usize, p: usize, q: usize) -> Result<ExactMatrix> {
    if !(1 <= p && p <= n && 1 <= q && q <= n) {
        return Err(Error::OutOfRange(format!("corner {p}x{q} outside {n}x{n}")));
    }
    Ok(corner(n, p, q))
}

/// A permuted and shifted ray `C^(p,q,u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RaySpec {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub u: usize,
    #[serde(default)]
    pub cyclic: bool,
}

impl RaySpec {
    /// Cells of the cross left of (above) its centre and right of (below) it.
    /// The centre has `p` cells; the `q - p` arm cells split as evenly as
    /// possible, the longer side being the right one when `n - p` is even
    /// and the left one when it is odd.
    pub fn arms(&self) -> (isize, isize) {
        let (n, p, q) = (self.n as isize, self.p as isize, self.q as isize);
        let (short, long) = ((q - p) / 2, ceil_half(q - p));
        if (n - p) % 2 == 0 {
            (short, long)
        } else {
            (long, short)
        }
    }

    /// Last shift of the lower admissible range: the cross, which starts at
    /// row `ceil((n-p)/2) - left + 1`, may slide up to touch the border.
    pub fn lower_limit(&self) -> isize {
        let (n, p) = (self.n as isize, self.p as isize);
        ceil_half(n - p) - self.arms().0 + 1
    }

    /// First shift of the upper range: the cross, which ends at row
    /// `n - floor((n-p)/2) + right`, may slide down to touch the border.
    pub fn upper_start(&self) -> isize {
        let (n, p) = (self.n as isize, self.p as isize);
        n - (n - p) / 2 + self.arms().1 + 1
    }

    pub fn validate(&self) -> Result<()> {
        check_pq(self.n, self.p, self.q)?;
        if !(1 <= self.u && self.u <= self.n) {
            return Err(Error::OutOfRange(format!(
                "shift {} outside 1..{}",
                self.u, self.n
            )));
        }
        if !self.cyclic && !self.is_admissible() {
            return Err(Error::OutOfRange(format!(
                "shift u = {} is not admissible for n = {}, p = {}, q = {} (allowed: 1, 2..={}, {}..={})",
                self.u,
                self.n,
                self.p,
                self.q,
                self.lower_limit(),
                self.upper_start(),
                self.n
            )));
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        let u = self.u as isize;
        u == 1 || (1 < u && u <= self.lower_limit()) || (self.upper_start() <= u && u <= self.n as isize)
    }

    /// Every admissible non-cyclic shift for `(n, p, q)`.
    pub fn admissible_shifts(n: usize, p: usize, q: usize) -> Vec<usize> {
        (1..=n)
            .filter(|&u| RaySpec { n, p, q, u, cyclic: false }.is_admissible())
            .collect()
    }
}

fn ceil_half(x: isize) -> isize {
    (x + 1).div_euclid(2)
}

/// `C^(p,q,u)`: `R̄^(p,q)` permuted by the Supnick permutation, then by `σ_u`.
pub fn ps_ray(spec: &RaySpec) -> Result<ExactMatrix> {
    spec.validate()?;
    let r = extremal_anti_monge(spec.n, spec.p, spec.q, true)?;
    let rp = apply_permutation(&r, &supnick_permutation(spec.n))?;
    apply_permutation(&rp, &cyclic_shift(spec.n, spec.u)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsKind {
    AntiMonge,
    Monge,
}

/// `Σ weight · C^(p,q,u)`; the Monge kind negates it and adds
/// `alpha_i + beta_j` when a sum part is given.
pub fn ps_matrix(
    n: usize,
    terms: &[(Rational, RaySpec)],
    kind: PsKind,
    sum_part: Option<(&[Rational], &[Rational])>,
) -> Result<ExactMatrix> {
    let mut m = ExactMatrix::zeros(n);
    for (w, spec) in terms {
        if !w.is_positive() {
            return Err(Error::OutOfRange(format!(
                "ray weight {} must be positive",
                rational::format(w)
            )));
        }
        if spec.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: spec.n,
            });
        }
        m.add_scaled(w, &ps_ray(spec)?)?;
    }
    match kind {
        PsKind::AntiMonge => {
            if sum_part.is_some() {
                return Err(Error::OutOfRange(
                    "a sum part only applies to the Monge kind".into(),
                ));
            }
            Ok(m)
        }
        PsKind::Monge => {
            let mut m = m.neg();
            if let Some((alpha, beta)) = sum_part {
                if alpha.len() != n || beta.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: alpha.len().min(beta.len()),
                    });
                }
                m = m.add(&ExactMatrix::from_fn(n, |i, j| &alpha[i] + &beta[j]))?;
            }
            Ok(m)
        }
    }
}

/// `T^(i)`: ones exactly where `|row - col| = i`, for `ceil((n-1)/2) < i <= n-1`.
/// That gives `2(n-i)` ones, at most one per row above the diagonal.
pub fn stripe_matrix(n: usize, i: usize) -> Result<ExactMatrix> {
    if !(n / 2 < i && i < n) {
        return Err(Error::OutOfRange(format!(
            "stripe index {i} outside ({}, {}] for n = {n}",
            n / 2,
            n.saturating_sub(1)
        )));
    }
    Ok(ExactMatrix::from_fn(n, |r, c| {
        if r.abs_diff(c) == i {
            one()
        } else {
            zero()
        }
    }))
}

pub fn toeplitz_from_profile(f: &ToeplitzProfile) -> ExactMatrix {
    f.to_matrix()
}

pub fn cut_matrix_from_blocks(b: &BlockPartition) -> ExactMatrix {
    b.cut_matrix()
}

/// Weak constant matrix: `v` off the diagonal, zero on it.
pub fn weak_constant(n: usize, v: &Rational) -> ExactMatrix {
    ExactMatrix::from_fn(n, |i, j| if i == j { zero() } else { v.clone() })
}

/// Robinson staircase ray: 1 where `min(i,j) <= k` and `max(i,j) >= l`, `k < l`.
pub fn staircase_ray(n: usize, k: usize, l: usize) -> Result<ExactMatrix> {
    if !(1 <= k && k < l && l <= n) {
        return Err(Error::OutOfRange(format!("staircase ({k},{l}) invalid for n = {n}")));
    }
    Ok(ExactMatrix::from_fn(n, |i, j| {
        let (a, b) = (i.min(j) + 1, i.max(j) + 1);
        if a <= k && b >= l {
            one()
        } else {
            zero()
        }
    }))
}
