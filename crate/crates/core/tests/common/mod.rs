#![allow(dead_code)]

use std::path::PathBuf;

use num_traits::Signed;
use qapstruct::generate::{extremal_anti_monge, supnick_permutation, RaySpec};
use qapstruct::rational::int;
use qapstruct::recognize::ToeplitzProfile;
use qapstruct::{apply_permutation, ExactMatrix, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.mat"))
}

pub fn fixture(name: &str) -> ExactMatrix {
    let path = fixture_path(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    ExactMatrix::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// The 6x6 matrix that is Robinson, Kalmanson and CDW feasible.
pub fn cut_example() -> ExactMatrix {
    fixture("cut_example")
}

pub fn perm(images: &[usize]) -> Permutation {
    Permutation::from_one_based(images).unwrap()
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_zero_based(v).unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> ExactMatrix {
    ExactMatrix::from_fn(n, |_, _| int(rng.gen_range(lo..=hi)))
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = int(rng.gen_range(lo..=hi));
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// Arbitrary (not necessarily symmetric) Toeplitz matrix.
pub fn random_toeplitz<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> ExactMatrix {
    let f = (0..2 * n - 1).map(|_| int(rng.gen_range(lo..=hi))).collect();
    ToeplitzProfile::new(n, f).unwrap().to_matrix()
}

/// Four-point Kalmanson conditions over every quadruple `i < j < k < l`.
pub fn kalmanson_global(c: &ExactMatrix) -> bool {
    let n = c.n();
    if !c.is_symmetric() {
        return false;
    }
    let a = |i: usize, j: usize| c.get(i, j);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let cross = a(i, k) + a(j, l);
                    if a(i, j) + a(k, l) > cross || a(i, l) + a(j, k) > cross {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Nonnegative with every 2x2 submatrix (not only adjacent ones) anti-Monge.
pub fn anti_monge_global(b: &ExactMatrix) -> bool {
    let n = b.n();
    if b.entries().iter().any(|v| v.is_negative()) {
        return false;
    }
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                for l in j + 1..n {
                    if b.get(i, j) + b.get(k, l) < b.get(i, l) + b.get(k, j) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn ceil2(x: i64) -> i64 {
    (x + 1).div_euclid(2)
}

fn floor2(x: i64) -> i64 {
    x.div_euclid(2)
}

/// The printed closed form of the Supnick-permuted symmetric ray, with the
/// unmarked lower bound on `j` in the arm rows read as `ceil((n-p)/2) + 1`.
pub fn printed_cross(n: usize, p: usize, q: usize) -> ExactMatrix {
    let (n, p, q) = (n as i64, p as i64, q as i64);
    let a = ceil2(n - p);
    let b = n - floor2(n - p);
    cross_from_bounds(n, a, b, floor2(q - p), ceil2(q - p))
}

/// The same cross with the arm lengths taken from the composition: the
/// longer arm sits on the right when `n - p` is even, on the left when odd.
pub fn parity_cross(n: usize, p: usize, q: usize) -> ExactMatrix {
    let (left, right) = RaySpec {
        n,
        p,
        q,
        u: 1,
        cyclic: false,
    }
    .arms();
    let (n, p) = (n as i64, p as i64);
    cross_from_bounds(n, ceil2(n - p), n - floor2(n - p), left as i64, right as i64)
}

fn cross_from_bounds(n: i64, a: i64, b: i64, left: i64, right: i64) -> ExactMatrix {
    ExactMatrix::from_fn(n as usize, |i0, j0| {
        let (mut i, mut j) = (i0 as i64 + 1, j0 as i64 + 1);
        if i > j {
            std::mem::swap(&mut i, &mut j);
        }
        let centre = |x: i64| a < x && x <= b;
        let v = if centre(i) && centre(j) {
            2
        } else if a - left < i && i <= a && centre(j) {
            1
        } else if centre(i) && b < j && j <= b + right {
            1
        } else {
            0
        };
        int(v)
    })
}

/// `R̄^(p,q)` permuted by the Supnick permutation, by composition.
pub fn composed_cross(n: usize, p: usize, q: usize) -> ExactMatrix {
    let r = extremal_anti_monge(n, p, q, true).unwrap();
    apply_permutation(&r, &supnick_permutation(n)).unwrap()
}
