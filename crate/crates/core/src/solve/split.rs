use std::collections::HashSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generate::{ps_matrix, ps_ray, PsKind, RaySpec, RayTerm};
use crate::lp::LinearSystem;
use crate::matrix::ExactMatrix;
use crate::rational::{self, Rational};
use crate::recognize::{check_monge_family, MongeVariant, Relation, ToeplitzFlag, ToeplitzProfile};

/// `B = B1 + B2` with `B1` monotone anti-Monge and `B2` a down-benevolent
/// Toeplitz matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinedSplit {
    pub b1: ExactMatrix,
    pub b2: ExactMatrix,
    pub profile: ToeplitzProfile,
}

/// An affine expression `constant + Σ coeff · f(var)`.
#[derive(Clone, Default)]
struct Affine {
    constant: Rational,
    terms: Vec<(usize, Rational)>,
}

impl Affine {
    fn plus(mut self, other: &Affine, sign: i64) -> Affine {
        let s = Rational::from_integer(sign.into());
        self.constant += &other.constant * &s;
        self.terms
            .extend(other.terms.iter().map(|(v, c)| (*v, c * &s)));
        self
    }

    /// `self >= 0` as a constraint.
    fn nonneg(self, sys: &mut LinearSystem) {
        sys.constrain(self.terms, Relation::Ge, -self.constant);
    }
}

/// Searches a down-benevolent profile `f` (unknowns `f(1..n-1)`, `f(0) = 0`)
/// such that `B - Toeplitz(f)` is monotone anti-Monge. Tries `f = 0` first.
pub fn split_combined1(b: &ExactMatrix) -> Option<CombinedSplit> {
    if !b.is_symmetric() {
        return None;
    }
    let n = b.n();
    if check_monge_family(b, MongeVariant::MonotoneAntiMonge).is_yes() {
        let profile = ToeplitzProfile::symmetric(vec![Rational::zero(); n]).ok()?;
        return Some(CombinedSplit {
            b1: b.clone(),
            b2: profile.to_matrix(),
            profile,
        });
    }
    let mut sys = LinearSystem::new();
    // var k-1 stands for f(k)
    let vars: Vec<usize> = (1..n).map(|_| sys.free()).collect();
    let cell = |i: usize, j: usize| {
        let d = i.abs_diff(j);
        Affine {
            constant: b.get(i, j).clone(),
            terms: if d == 0 {
                vec![]
            } else {
                vec![(vars[d - 1], Rational::from_integer((-1).into()))]
            },
        }
    };
    for i in 0..n {
        for j in 0..n {
            cell(i, j).nonneg(&mut sys);
            if j + 1 < n {
                cell(i, j + 1).plus(&cell(i, j), -1).nonneg(&mut sys);
            }
            if i + 1 < n {
                cell(i + 1, j).plus(&cell(i, j), -1).nonneg(&mut sys);
            }
            if i + 1 < n && j + 1 < n {
                cell(i, j)
                    .plus(&cell(i + 1, j + 1), 1)
                    .plus(&cell(i, j + 1), -1)
                    .plus(&cell(i + 1, j), -1)
                    .nonneg(&mut sys);
            }
        }
    }
    let f = |k: usize| Affine {
        constant: Rational::zero(),
        terms: vec![(vars[k - 1], Rational::from_integer(1.into()))],
    };
    let m = n / 2;
    for k in 1..m {
        f(k).plus(&f(k + 1), -1).nonneg(&mut sys);
    }
    for k in 1..=m {
        if n - k != k {
            f(k).plus(&f(n - k), -1).nonneg(&mut sys);
        }
    }
    let x = sys.solve()?;
    let mut half = vec![Rational::zero()];
    half.extend(x);
    let profile = ToeplitzProfile::symmetric(half).ok()?;
    let b2 = profile.to_matrix();
    let b1 = b.sub(&b2).ok()?;
    let ok = profile.has(ToeplitzFlag::DownBenevolent)
        && check_monge_family(&b1, MongeVariant::MonotoneAntiMonge).is_yes();
    ok.then_some(CombinedSplit { b1, b2, profile })
}

/// A PS monotone (anti-)Monge matrix written as a ray combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsRepresentation {
    pub n: usize,
    pub kind: PsKind,
    pub cyclic: bool,
    pub terms: Vec<RayTerm>,
    /// Monge kind only: `S[i,j] = alpha_i + beta_j`.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rational::serde_opt_vec")]
    pub sum_alpha: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rational::serde_opt_vec")]
    pub sum_beta: Option<Vec<Rational>>,
}

impl PsRepresentation {
    pub fn build(&self) -> Result<ExactMatrix> {
        let t: Vec<(Rational, RaySpec)> = self.terms.iter().map(|r| (r.weight.clone(), r.spec)).collect();
        let sum = match (&self.sum_alpha, &self.sum_beta) {
            (Some(a), Some(b)) => Some((a.as_slice(), b.as_slice())),
            _ => None,
        };
        ps_matrix(self.n, &t, self.kind, sum)
    }

    /// The sum part has the allowed shape: a constant for the non-cyclic
    /// Monge kind, `gamma_i + gamma_j` for the cyclic one, absent otherwise.
    pub fn sum_part_allowed(&self) -> bool {
        match (self.kind, &self.sum_alpha, &self.sum_beta) {
            (PsKind::AntiMonge, None, None) => true,
            (PsKind::Monge, None, None) => true,
            (PsKind::Monge, Some(a), Some(b)) if self.cyclic => a == b,
            (PsKind::Monge, Some(a), Some(b)) => {
                a.iter().all(|x| *x == a[0]) && b.iter().all(|x| x.is_zero())
            }
            _ => false,
        }
    }

    /// Rebuilds and compares; also checks every ray's shift mode.
    pub fn represents(&self, a: &ExactMatrix) -> bool {
        self.n == a.n()
            && self.sum_part_allowed()
            && self.terms.iter().all(|t| t.spec.cyclic == self.cyclic && t.weight.is_positive())
            && self.build().map_or(false, |m| m == *a)
    }
}

/// Decides membership in the PS monotone (anti-)Monge cone by an exact LP
/// over the ray weights (and the sum part for the Monge kind).
pub fn ps_membership(a: &ExactMatrix, kind: PsKind, cyclic: bool) -> Option<PsRepresentation> {
    if !a.is_symmetric() {
        return None;
    }
    let n = a.n();
    let mut seen = HashSet::new();
    let mut rays = Vec::new();
    for p in 1..=n {
        for q in p..=n {
            let shifts: Vec<usize> = if cyclic {
                (1..=n).collect()
            } else {
                RaySpec::admissible_shifts(n, p, q)
            };
            for u in shifts {
                let spec = RaySpec { n, p, q, u, cyclic };
                let m = ps_ray(&spec).ok()?;
                if seen.insert(m.clone()) {
                    rays.push((spec, m));
                }
            }
        }
    }
    let mut sys = LinearSystem::new();
    let w: Vec<usize> = rays.iter().map(|_| sys.nonneg()).collect();
    // Sum part: one constant, or gamma_1..gamma_n.
    let sum_vars: Vec<usize> = match (kind, cyclic) {
        (PsKind::AntiMonge, _) => vec![],
        (PsKind::Monge, false) => vec![sys.free()],
        (PsKind::Monge, true) => (0..n).map(|_| sys.free()).collect(),
    };
    let sign = match kind {
        PsKind::AntiMonge => 1,
        PsKind::Monge => -1,
    };
    for i in 0..n {
        for j in i..n {
            let mut coeffs: Vec<(usize, Rational)> = rays
                .iter()
                .zip(&w)
                .filter(|((_, m), _)| !m.get(i, j).is_zero())
                .map(|((_, m), &v)| (v, m.get(i, j) * Rational::from_integer(sign.into())))
                .collect();
            match sum_vars.len() {
                0 => {}
                1 => coeffs.push((sum_vars[0], Rational::from_integer(1.into()))),
                _ => {
                    coeffs.push((sum_vars[i], Rational::from_integer(1.into())));
                    coeffs.push((sum_vars[j], Rational::from_integer(1.into())));
                }
            }
            sys.constrain(coeffs, Relation::Eq, a.get(i, j).clone());
        }
    }
    let x = sys.solve()?;
    let terms = rays
        .iter()
        .zip(&w)
        .filter(|(_, &v)| x[v].is_positive())
        .map(|((spec, _), &v)| RayTerm {
            weight: x[v].clone(),
            spec: *spec,
        })
        .collect();
    let (sum_alpha, sum_beta) = match (kind, cyclic) {
        (PsKind::AntiMonge, _) => (None, None),
        (PsKind::Monge, false) => (
            Some(vec![x[sum_vars[0]].clone(); n]),
            Some(vec![Rational::zero(); n]),
        ),
        (PsKind::Monge, true) => {
            let g: Vec<Rational> = sum_vars.iter().map(|&v| x[v].clone()).collect();
            (Some(g.clone()), Some(g))
        }
    };
    let rep = PsRepresentation {
        n,
        kind,
        cyclic,
        terms,
        sum_alpha,
        sum_beta,
    };
    rep.represents(a).then_some(rep)
}
