use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Solution, SolutionCertificate};
use crate::error::{Error, Result};
use crate::matrix::{qap_objective, ExactMatrix, Permutation};
use crate::par;
use crate::rational::{common_denominator, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForceOptions {
    pub max_n: usize,
    /// Maximize instead of minimize.
    pub maximize: bool,
    /// Worker bound for the parallel path; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Forces the single-threaded path even when built with `parallel`.
    pub sequential: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        Self {
            max_n: 10,
            maximize: false,
            threads: None,
            sequential: false,
        }
    }
}

/// Exhaustive minimum over all `n!` permutations; ties go to the
/// lexicographically smallest permutation.
pub fn brute_force(a: &ExactMatrix, b: &ExactMatrix, max_n: usize) -> Result<Solution> {
    brute_force_with(
        a,
        b,
        &BruteForceOptions {
            max_n,
            ..Default::default()
        },
    )
}

pub fn brute_force_with(a: &ExactMatrix, b: &ExactMatrix, opts: &BruteForceOptions) -> Result<Solution> {
    a.require_same_n(b)?;
    let n = a.n();
    if n > opts.max_n {
        return Err(Error::OutOfRange(format!(
            "n = {n} exceeds the brute-force cap {}",
            opts.max_n
        )));
    }
    // Scale both matrices to integers; the objective scales by da * db.
    let da = common_denominator(a.entries());
    let db = common_denominator(b.entries());
    let sign = if opts.maximize { -1 } else { 1 };
    let ia: Vec<BigInt> = a
        .entries()
        .iter()
        .map(|v| (v * Rational::from_integer(da.clone())).to_integer() * sign)
        .collect();
    let ib: Vec<BigInt> = b
        .entries()
        .iter()
        .map(|v| (v * Rational::from_integer(db.clone())).to_integer())
        .collect();

    let threads = if opts.sequential { Some(1) } else { opts.threads };
    let (best, perm) = match small_ints(&ia, &ib, n) {
        Some((sa, sb)) => {
            let (v, p) = search(&Ctx { n, a: sa, b: sb }, threads);
            (BigInt::from(v), p)
        }
        None => search(&Ctx { n, a: ia, b: ib }, threads),
    };
    let permutation = Permutation::from_zero_based(perm)?;
    let value = Rational::new(best * sign, da * db);
    debug_assert_eq!(value, qap_objective(a, b, &permutation)?);
    Ok(Solution {
        permutation,
        value,
        certificate: SolutionCertificate::BruteForce {
            maximize: opts.maximize,
            permutations: (1..=n as u64).product(),
        },
    })
}

/// i128 copies when no partial sum can overflow.
fn small_ints(a: &[BigInt], b: &[BigInt], n: usize) -> Option<(Vec<i128>, Vec<i128>)> {
    let max = |v: &[BigInt]| v.iter().map(|x| x.abs()).max().unwrap_or_default();
    let bound = max(a) * max(b) * BigInt::from((n * n) as u64);
    if bound.bits() > 120 {
        return None;
    }
    let conv = |v: &[BigInt]| v.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>();
    Some((conv(a)?, conv(b)?))
}

struct Ctx<T> {
    n: usize,
    a: Vec<T>,
    b: Vec<T>,
}

impl<T> Ctx<T>
where
    T: Clone + Zero,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    /// Objective change from placing facility `v` at position `k`, given
    /// the positions already placed in `perm`.
    fn delta(&self, perm: &[usize], v: usize) -> T {
        let n = self.n;
        let k = perm.len();
        let mut d = &self.a[v * n + v] * &self.b[k * n + k];
        for (i, &pi) in perm.iter().enumerate() {
            d = d + &self.a[pi * n + v] * &self.b[i * n + k];
            d = d + &self.a[v * n + pi] * &self.b[k * n + i];
        }
        d
    }
}

fn search<T>(ctx: &Ctx<T>, threads: Option<usize>) -> (T, Vec<usize>)
where
    T: Clone + Ord + Zero + Send + Sync + Add<Output = T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let n = ctx.n;
    // Split on the first two positions; the prefixes come out in
    // lexicographic order, and so do the subtree optima after the map.
    let depth = if n >= 4 { 2 } else { 0 };
    let mut prefixes = vec![Vec::new()];
    for _ in 0..depth {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..n)
                    .filter(|v| !p.contains(v))
                    .map(|v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let results = par::map_ordered(prefixes, threads, |prefix| {
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        let mut cost = T::zero();
        for &v in &prefix {
            cost = cost + ctx.delta(&perm, v);
            perm.push(v);
            used[v] = true;
        }
        let mut best = None;
        dfs(ctx, &mut perm, &mut used, cost, &mut best);
        best.expect("every prefix has a completion")
    });
    let mut best: Option<(T, Vec<usize>)> = None;
    for r in results {
        if best.as_ref().map_or(true, |(v, _)| r.0 < *v) {
            best = Some(r);
        }
    }
    best.expect("at least one permutation")
}

fn dfs<T>(ctx: &Ctx<T>, perm: &mut Vec<usize>, used: &mut [bool], cost: T, best: &mut Option<(T, Vec<usize>)>)
where
    T: Clone + Ord + Zero + Add<Output = T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    if perm.len() == ctx.n {
        if best.as_ref().map_or(true, |(v, _)| cost < *v) {
            *best = Some((cost, perm.clone()));
        }
        return;
    }
    for v in 0..ctx.n {
        if used[v] {
            continue;
        }
        let c = cost.clone() + ctx.delta(perm, v);
        used[v] = true;
        perm.push(v);
        dfs(ctx, perm, used, c, best);
        perm.pop();
        used[v] = false;
    }
}

/// Best total of `n-i` above-diagonal entries whose row and column indices
/// are pairwise distinct, found by exhaustive search.
pub fn selection_optimum(a: &ExactMatrix, i: usize) -> Result<Rational> {
    a.require_symmetric()?;
    let n = a.n();
    if !(n / 2 < i && i < n) {
        return Err(Error::OutOfRange(format!(
            "selection index {i} outside ({}, {}] for n = {n}",
            n / 2,
            n.saturating_sub(1)
        )));
    }
    let mut used = vec![false; n];
    Ok(select(a, &mut used, 0, n - i).expect("a selection of that size exists"))
}

fn select(a: &ExactMatrix, used: &mut [bool], from: usize, left: usize) -> Option<Rational> {
    if left == 0 {
        return Some(Rational::zero());
    }
    let n = a.n();
    let r = (from..n).find(|&r| !used[r])?;
    let free = (r..n).filter(|&x| !used[x]).count();
    if free < 2 * left {
        return None;
    }
    used[r] = true;
    // Either r pairs with a later index, or r stays out.
    let mut best = select(a, used, r + 1, left);
    for c in r + 1..n {
        if used[c] {
            continue;
        }
        used[c] = true;
        if let Some(v) = select(a, used, r + 1, left - 1) {
            let v = v + a.get(r, c);
            if best.as_ref().map_or(true, |b| v > *b) {
                best = Some(v);
            }
        }
        used[c] = false;
    }
    used[r] = false;
    best
}
