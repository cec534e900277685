//! Exact linear feasibility over the rationals: a dense phase-one simplex
//! with Bland's rule, so it always terminates.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::recognize::Relation;

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<(usize, Rational)>,
    rel: Relation,
    rhs: Rational,
}

/// A system of linear constraints `Σ c_j x_j (<=|>=|=) rhs`.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    free: Vec<bool>,
    rows: Vec<Row>,
}

impl LinearSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a variable constrained to `x >= 0`.
    pub fn nonneg(&mut self) -> usize {
        self.free.push(false);
        self.free.len() - 1
    }

    /// Adds an unrestricted variable.
    pub fn free(&mut self) -> usize {
        self.free.push(true);
        self.free.len() - 1
    }

    pub fn vars(&self) -> usize {
        self.free.len()
    }

    pub fn constraints(&self) -> usize {
        self.rows.len()
    }

    /// Adds `Σ coeffs · x (rel) rhs`. Repeated variables are summed.
    pub fn constrain(&mut self, coeffs: Vec<(usize, Rational)>, rel: Relation, rhs: Rational) {
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(coeffs.len());
        let mut sorted = coeffs;
        sorted.sort_by_key(|(j, _)| *j);
        for (j, c) in sorted {
            assert!(j < self.vars(), "unknown variable {j}");
            match merged.last_mut() {
                Some((k, acc)) if *k == j => *acc += c,
                _ => merged.push((j, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        self.rows.push(Row {
            coeffs: merged,
            rel,
            rhs,
        });
    }

    /// True when `x` satisfies every constraint and sign restriction.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.vars()
            && self
                .free
                .iter()
                .zip(x)
                .all(|(&free, v)| free || !v.is_negative())
            && self.rows.iter().all(|r| {
                let lhs: Rational = r.coeffs.iter().map(|(j, c)| c * &x[*j]).sum();
                r.rel.holds(&lhs, &r.rhs)
            })
    }

    /// A feasible point, or `None` when the system is infeasible. The point
    /// is a basic solution of the standard form and is verified before it
    /// is returned.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        // Columns: x+ for every variable, x- for free ones, then one slack per
        // inequality, then one artificial per row.
        let nv = self.vars();
        let mut neg_col = vec![None; nv];
        let mut cols = nv;
        for (j, &f) in self.free.iter().enumerate() {
            if f {
                neg_col[j] = Some(cols);
                cols += 1;
            }
        }
        let mut slack_col = vec![None; self.rows.len()];
        for (i, r) in self.rows.iter().enumerate() {
            if r.rel != Relation::Eq {
                slack_col[i] = Some(cols);
                cols += 1;
            }
        }
        let art0 = cols;
        let m = self.rows.len();
        let width = art0 + m + 1;
        let rhs = width - 1;

        let mut t = vec![vec![Rational::zero(); width]; m];
        for (i, r) in self.rows.iter().enumerate() {
            let row = &mut t[i];
            for (j, c) in &r.coeffs {
                row[*j] = c.clone();
                if let Some(nj) = neg_col[*j] {
                    row[nj] = -c.clone();
                }
            }
            match (r.rel, slack_col[i]) {
                (Relation::Le, Some(s)) => row[s] = Rational::one(),
                (Relation::Ge, Some(s)) => row[s] = -Rational::one(),
                _ => {}
            }
            row[rhs] = r.rhs.clone();
            if row[rhs].is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
            }
            row[art0 + i] = Rational::one();
        }
        let mut basis: Vec<usize> = (art0..art0 + m).collect();

        // Phase-one objective: minimize the sum of artificials, kept as
        // reduced costs.
        let mut obj = vec![Rational::zero(); width];
        for row in &t {
            for j in 0..art0 {
                obj[j] -= &row[j];
            }
            obj[rhs] -= &row[rhs];
        }

        loop {
            let Some(enter) = (0..art0 + m).find(|&j| obj[j].is_negative()) else {
                break;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in t.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[rhs] / &row[enter];
                    let better = match &leave {
                        None => true,
                        Some((l, best)) => {
                            ratio < *best || (ratio == *best && basis[i] < basis[*l])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            // Phase one is bounded below by zero, so a pivot row always exists.
            let (p, _) = leave.expect("phase-one objective is bounded");
            pivot(&mut t, &mut obj, p, enter);
            basis[p] = enter;
        }

        if !obj[rhs].is_zero() {
            return None;
        }
        let mut full = vec![Rational::zero(); art0];
        for (i, &b) in basis.iter().enumerate() {
            if b < art0 {
                full[b] = t[i][rhs].clone();
            }
        }
        let x: Vec<Rational> = (0..nv)
            .map(|j| match neg_col[j] {
                Some(nj) => &full[j] - &full[nj],
                None => full[j].clone(),
            })
            .collect();
        debug_assert!(self.satisfied_by(&x));
        self.satisfied_by(&x).then_some(x)
    }
}

fn pivot(t: &mut [Vec<Rational>], obj: &mut [Rational], p: usize, col: usize) {
    let inv = Rational::one() / &t[p][col];
    for v in t[p].iter_mut() {
        *v *= &inv;
    }
    let prow = t[p].clone();
    let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p || row[col].is_zero() {
            continue;
        }
        let f = row[col].clone();
        for &j in &nz {
            row[j] -= &f * &prow[j];
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for &j in &nz {
            obj[j] -= &f * &prow[j];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn finds_a_point_in_a_triangle() {
        let mut s = LinearSystem::new();
        let x = s.nonneg();
        let y = s.nonneg();
        s.constrain(vec![(x, int(1)), (y, int(1))], Relation::Le, int(1));
        s.constrain(vec![(x, int(2)), (y, int(-1))], Relation::Ge, frac(1, 2));
        let p = s.solve().unwrap();
        assert!(s.satisfied_by(&p));
    }

    #[test]
    fn detects_infeasibility() {
        let mut s = LinearSystem::new();
        let x = s.free();
        s.constrain(vec![(x, int(1))], Relation::Ge, int(3));
        s.constrain(vec![(x, int(1))], Relation::Le, int(2));
        assert!(s.solve().is_none());
    }

    #[test]
    fn free_variables_go_negative() {
        let mut s = LinearSystem::new();
        let x = s.free();
        let y = s.nonneg();
        s.constrain(vec![(x, int(1)), (y, int(1))], Relation::Eq, int(-5));
        let p = s.solve().unwrap();
        assert!(p[0] <= int(-5));
    }

    #[test]
    fn degenerate_equalities() {
        let mut s = LinearSystem::new();
        let v: Vec<usize> = (0..4).map(|_| s.nonneg()).collect();
        for _ in 0..3 {
            s.constrain(v.iter().map(|&j| (j, int(1))).collect(), Relation::Eq, int(0));
        }
        s.constrain(vec![(v[0], int(1)), (v[0], int(-1))], Relation::Eq, int(0));
        assert_eq!(s.solve().unwrap(), vec![int(0); 4]);
    }
}
