//! Seeded random class members, each built from the class's cone
//! parameterization so no sample is ever rejected.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{corner_ray, extremal_anti_monge, ps_matrix, staircase_ray, PsKind, RaySpec};
use crate::blocks::BlockPartition;
use crate::decompose::{ConicDecomposition, Term};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{self, frac, int, Rational};
use crate::recognize::ToeplitzProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceClass {
    Robinson,
    Kalmanson,
    RobinsonKalmanson,
    CdwConic,
    MonotoneAntiMonge,
    SymMonotoneAntiMonge,
    UpBenevolent,
    DownBenevolent,
    DwToeplitz,
    SimpleToeplitz,
    PsAntiMonge,
    PsMonge,
    CyclicPsMonge,
}

impl InstanceClass {
    pub const ALL: [InstanceClass; 13] = [
        InstanceClass::Robinson,
        InstanceClass::Kalmanson,
        InstanceClass::RobinsonKalmanson,
        InstanceClass::CdwConic,
        InstanceClass::MonotoneAntiMonge,
        InstanceClass::SymMonotoneAntiMonge,
        InstanceClass::UpBenevolent,
        InstanceClass::DownBenevolent,
        InstanceClass::DwToeplitz,
        InstanceClass::SimpleToeplitz,
        InstanceClass::PsAntiMonge,
        InstanceClass::PsMonge,
        InstanceClass::CyclicPsMonge,
    ];

    pub fn name(self) -> &'static str {
        use InstanceClass::*;
        match self {
            Robinson => "robinson",
            Kalmanson => "kalmanson",
            RobinsonKalmanson => "robinson_kalmanson",
            CdwConic => "cdw_conic",
            MonotoneAntiMonge => "monotone_anti_monge",
            SymMonotoneAntiMonge => "sym_monotone_anti_monge",
            UpBenevolent => "up_benevolent",
            DownBenevolent => "down_benevolent",
            DwToeplitz => "dw_toeplitz",
            SimpleToeplitz => "simple_toeplitz",
            PsAntiMonge => "ps_anti_monge",
            PsMonge => "ps_monge",
            CyclicPsMonge => "cyclic_ps_monge",
        }
    }
}

impl fmt::Display for InstanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InstanceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InstanceClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = InstanceClass::ALL.iter().map(|c| c.name()).collect();
                Error::OutOfRange(format!("unknown class {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayTerm {
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
    pub spec: RaySpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerTerm {
    pub p: usize,
    pub q: usize,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StairTerm {
    pub k: usize,
    pub l: usize,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
}

/// The parameters a random instance was built from. [`GenerationSpec::build`]
/// rebuilds the matrix exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "snake_case")]
pub enum GenerationSpec {
    /// Weak constant (or weak sum) part plus weighted cut matrices, zero diagonal.
    Cuts(ConicDecomposition),
    /// Offset off the diagonal plus staircase rays, zero diagonal.
    Staircase {
        n: usize,
        #[serde(with = "rational::serde_str")]
        offset: Rational,
        rays: Vec<StairTerm>,
    },
    /// Corner rays `R^(p,q)`, symmetrized when asked.
    Corners {
        n: usize,
        symmetric: bool,
        rays: Vec<CornerTerm>,
    },
    Profile { profile: ToeplitzProfile },
    Rays {
        n: usize,
        kind: PsKind,
        terms: Vec<RayTerm>,
        #[serde(
            default,
            skip_serializing_if = "Option::is_none",
            with = "rational::serde_opt_vec"
        )]
        sum_alpha: Option<Vec<Rational>>,
        #[serde(
            default,
            skip_serializing_if = "Option::is_none",
            with = "rational::serde_opt_vec"
        )]
        sum_beta: Option<Vec<Rational>>,
    },
}

impl GenerationSpec {
    pub fn build(&self) -> Result<ExactMatrix> {
        match self {
            GenerationSpec::Cuts(d) => Ok(d.reconstruct()),
            GenerationSpec::Staircase { n, offset, rays } => {
                let mut m = super::weak_constant(*n, offset);
                for r in rays {
                    m.add_scaled(&r.weight, &staircase_ray(*n, r.k, r.l)?)?;
                }
                Ok(m)
            }
            GenerationSpec::Corners { n, symmetric, rays } => {
                let mut m = ExactMatrix::zeros(*n);
                for r in rays {
                    let ray = if *symmetric {
                        extremal_anti_monge(*n, r.p, r.q, true)?
                    } else {
                        corner_ray(*n, r.p, r.q)?
                    };
                    m.add_scaled(&r.weight, &ray)?;
                }
                Ok(m)
            }
            GenerationSpec::Profile { profile } => Ok(profile.to_matrix()),
            GenerationSpec::Rays {
                n,
                kind,
                terms,
                sum_alpha,
                sum_beta,
            } => {
                let t: Vec<(Rational, RaySpec)> =
                    terms.iter().map(|r| (r.weight.clone(), r.spec)).collect();
                let sum = match (sum_alpha, sum_beta) {
                    (Some(a), Some(b)) => Some((a.as_slice(), b.as_slice())),
                    (None, None) => None,
                    _ => {
                        return Err(Error::OutOfRange(
                            "sum part needs both alpha and beta".into(),
                        ))
                    }
                };
                ps_matrix(*n, &t, *kind, sum)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedInstance {
    pub class: InstanceClass,
    pub n: usize,
    pub seed: u64,
    pub spec: GenerationSpec,
    #[serde(skip)]
    pub matrix: Option<ExactMatrix>,
}

impl GeneratedInstance {
    pub fn matrix(&self) -> &ExactMatrix {
        self.matrix.as_ref().expect("generated instances carry their matrix")
    }
}

/// Small positive weight; mostly integers, sometimes halves and thirds.
fn weight(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_bool(0.8) {
        int(rng.gen_range(1..=4))
    } else {
        frac(rng.gen_range(1..=5), rng.gen_range(2..=3))
    }
}

/// Zero with probability `1 - p`, otherwise a positive weight.
fn sparse(rng: &mut ChaCha8Rng, p: f64) -> Rational {
    if rng.gen_bool(p) {
        weight(rng)
    } else {
        Rational::zero()
    }
}

fn signed(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    int(rng.gen_range(lo..=hi))
}

/// Random CDW block sizes: leading singletons, then non-decreasing parts of size >= 2.
pub(crate) fn random_cdw_sizes(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut singles = rng.gen_range(0..=n);
    if n - singles == 1 {
        singles = n;
    }
    let mut sizes = vec![1; singles];
    let mut rem = n - singles;
    let mut min = 2;
    while rem > 0 {
        let choices: Vec<usize> = (min..=rem).filter(|&s| rem == s || rem - s >= s).collect();
        let s = *choices.choose(rng).expect("taking the remainder is always possible");
        sizes.push(s);
        rem -= s;
        min = s;
    }
    sizes
}

fn nonincreasing(rng: &mut ChaCha8Rng, len: usize, base: Rational) -> Vec<Rational> {
    let mut v = vec![base; len];
    for k in (0..len.saturating_sub(1)).rev() {
        v[k] = &v[k + 1] + sparse(rng, 0.7);
    }
    v
}

/// Random `f(1..=n-1)` satisfying the benevolent shape: monotone up to
/// `m = ceil((n-1)/2)` and `f(n-i)` on the right side of `f(i)`.
fn benevolent_half(rng: &mut ChaCha8Rng, n: usize, down: bool, dw: bool) -> Vec<Rational> {
    let m = n / 2;
    let mut f = vec![Rational::zero(); n];
    let base = signed(rng, -2, 4);
    let mono = nonincreasing(rng, m, base);
    for i in 1..=m {
        f[i] = if down { mono[i - 1].clone() } else { mono[m - i].clone() };
    }
    for i in 1..=m {
        let j = n - i;
        if j == i {
            continue;
        }
        let gap = if dw { Rational::zero() } else { sparse(rng, 0.7) };
        f[j] = if down { &f[i] - gap } else { &f[i] + gap };
    }
    f
}

/// Deterministic member of `class` for `(n, seed)`.
pub fn random_instance(class: InstanceClass, n: usize, seed: u64) -> Result<GeneratedInstance> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    use InstanceClass::*;
    let spec = match class {
        Robinson => {
            let mut rays = Vec::new();
            for k in 1..n {
                for l in k + 1..=n {
                    let w = sparse(rng, 0.35);
                    if !w.is_zero() {
                        rays.push(StairTerm { k, l, weight: w });
                    }
                }
            }
            GenerationSpec::Staircase {
                n,
                offset: signed(rng, -3, 3),
                rays,
            }
        }
        Kalmanson => {
            let mut terms = Vec::new();
            for k in 2..n {
                for l in k + 1..n {
                    push_cut(&mut terms, n, k, l, sparse(rng, 0.3));
                }
            }
            for i in 2..n.saturating_sub(1) {
                // alpha + beta >= 0 with either one allowed negative.
                let s = sparse(rng, 0.6);
                let a = signed(rng, -3, 3);
                let b = &s - &a;
                push_cut(&mut terms, n, 1, i, a);
                push_cut(&mut terms, n, i + 1, n, b);
            }
            let gammas = (0..n).map(|_| signed(rng, -4, 4)).collect();
            GenerationSpec::Cuts(ConicDecomposition {
                n,
                offset: Rational::zero(),
                terms,
                residual_gammas: Some(gammas),
            })
        }
        RobinsonKalmanson => {
            let mut terms = Vec::new();
            for k in 2..n {
                for l in k + 1..n {
                    push_cut(&mut terms, n, k, l, sparse(rng, 0.3));
                }
            }
            for i in 1..n {
                if i >= 2 {
                    push_cut(&mut terms, n, 1, i, sparse(rng, 0.4));
                }
                if i + 2 <= n {
                    push_cut(&mut terms, n, i + 1, n, sparse(rng, 0.4));
                }
            }
            GenerationSpec::Cuts(ConicDecomposition {
                n,
                offset: signed(rng, -3, 3),
                terms,
                residual_gammas: None,
            })
        }
        CdwConic => {
            let count = rng.gen_range(1..=4);
            let terms = (0..count)
                .map(|_| Term {
                    blocks: BlockPartition::from_sizes(&random_cdw_sizes(rng, n))
                        .expect("sizes sum to n"),
                    weight: weight(rng),
                })
                .collect();
            GenerationSpec::Cuts(ConicDecomposition {
                n,
                offset: signed(rng, -3, 3),
                terms,
                residual_gammas: None,
            })
        }
        MonotoneAntiMonge | SymMonotoneAntiMonge => {
            let symmetric = class == SymMonotoneAntiMonge;
            let count = rng.gen_range(1..=2 * n);
            let rays = (0..count)
                .map(|_| {
                    let (mut p, mut q) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
                    if symmetric && p > q {
                        std::mem::swap(&mut p, &mut q);
                    }
                    CornerTerm { p, q, weight: weight(rng) }
                })
                .collect();
            GenerationSpec::Corners { n, symmetric, rays }
        }
        UpBenevolent | DownBenevolent | DwToeplitz => {
            let half = benevolent_half(rng, n, class != UpBenevolent, class == DwToeplitz);
            GenerationSpec::Profile {
                profile: ToeplitzProfile::symmetric(half)?,
            }
        }
        SimpleToeplitz => {
            let mut half = vec![Rational::zero()];
            let base = signed(rng, -2, 3);
            half.extend(nonincreasing(rng, n - 1, base));
            GenerationSpec::Profile {
                profile: ToeplitzProfile::symmetric(half)?,
            }
        }
        PsAntiMonge | PsMonge | CyclicPsMonge => {
            let cyclic = class == CyclicPsMonge;
            let count = rng.gen_range(1..=4);
            let terms = (0..count)
                .map(|_| {
                    let p = rng.gen_range(1..=n);
                    let q = rng.gen_range(p..=n);
                    let u = if cyclic {
                        rng.gen_range(1..=n)
                    } else {
                        *RaySpec::admissible_shifts(n, p, q)
                            .choose(rng)
                            .expect("u = 1 is always admissible")
                    };
                    RayTerm {
                        weight: weight(rng),
                        spec: RaySpec { n, p, q, u, cyclic },
                    }
                })
                .collect();
            let (kind, sum_alpha, sum_beta) = match class {
                PsAntiMonge => (PsKind::AntiMonge, None, None),
                PsMonge => {
                    // Only a constant sum part keeps the identity optimal
                    // against a general down-benevolent partner.
                    let c = signed(rng, 0, 6);
                    (PsKind::Monge, Some(vec![c; n]), Some(vec![Rational::zero(); n]))
                }
                _ => {
                    let g: Vec<Rational> = (0..n).map(|_| signed(rng, -3, 5)).collect();
                    (PsKind::Monge, Some(g.clone()), Some(g))
                }
            };
            GenerationSpec::Rays {
                n,
                kind,
                terms,
                sum_alpha,
                sum_beta,
            }
        }
    };
    let matrix = spec.build()?;
    Ok(GeneratedInstance {
        class,
        n,
        seed,
        spec,
        matrix: Some(matrix),
    })
}

fn push_cut(terms: &mut Vec<Term>, n: usize, k: usize, l: usize, w: Rational) {
    if !w.is_zero() {
        terms.push(Term {
            blocks: BlockPartition::single_cut(n, k, l).expect("cut inside 1..n"),
            weight: w,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_matrix() {
        for class in InstanceClass::ALL {
            let a = random_instance(class, 7, 42).unwrap();
            let b = random_instance(class, 7, 42).unwrap();
            assert_eq!(a.matrix(), b.matrix(), "{class}");
            assert_eq!(a.spec, b.spec);
        }
    }

    #[test]
    fn spec_round_trips_through_json() {
        for class in InstanceClass::ALL {
            let g = random_instance(class, 6, 3).unwrap();
            let json = serde_json::to_string(&g).unwrap();
            let back: GeneratedInstance = serde_json::from_str(&json).unwrap();
            assert_eq!(&back.spec.build().unwrap(), g.matrix(), "{class}");
        }
    }

    #[test]
    fn class_names_parse() {
        for class in InstanceClass::ALL {
            assert_eq!(class.name().parse::<InstanceClass>().unwrap(), class);
        }
        assert!("nope".parse::<InstanceClass>().is_err());
    }

    #[test]
    fn cdw_sizes_are_cdw() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..12 {
            for _ in 0..50 {
                let s = random_cdw_sizes(&mut rng, n);
                assert_eq!(s.iter().sum::<usize>(), n);
                assert!(BlockPartition::from_sizes(&s).unwrap().is_cdw(), "{s:?}");
            }
        }
    }
}
