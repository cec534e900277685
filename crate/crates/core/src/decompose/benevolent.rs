use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::stripe_matrix;
use crate::matrix::ExactMatrix;
use crate::rational::Rational;
use crate::recognize::{extract_toeplitz_profile, ToeplitzFlag, ToeplitzProfile, Verdict};

/// `B = B' - Σ beta_i T^(i)` with `B'` a DW Toeplitz matrix and `beta_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenevolentSplit {
    pub dw_profile: ToeplitzProfile,
    /// `(i, beta_i)` for every `ceil((n-1)/2) < i <= n-1`, zeros included.
    #[serde(with = "beta_list")]
    pub betas: Vec<(usize, Rational)>,
}

mod beta_list {
    use super::Rational;
    use crate::rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        i: usize,
        #[serde(with = "rational::serde_str")]
        beta: Rational,
    }

    pub fn serialize<S: Serializer>(v: &[(usize, Rational)], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|(i, b)| Entry { i: *i, beta: b.clone() })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(usize, Rational)>, D::Error> {
        Ok(Vec::<Entry>::deserialize(d)?
            .into_iter()
            .map(|e| (e.i, e.beta))
            .collect())
    }
}

impl BenevolentSplit {
    pub fn dw(&self) -> ExactMatrix {
        self.dw_profile.to_matrix()
    }

    pub fn beta(&self, i: usize) -> Option<&Rational> {
        self.betas.iter().find(|(k, _)| *k == i).map(|(_, b)| b)
    }

    pub fn reconstruct(&self) -> ExactMatrix {
        let n = self.dw_profile.n();
        let mut m = self.dw();
        for (i, b) in &self.betas {
            let t = stripe_matrix(n, *i).expect("stripe index in range");
            m.add_scaled(&-b.clone(), &t).expect("same dimension");
        }
        m
    }
}

/// Splits a down-benevolent Toeplitz matrix: `f'(i) = f(i)` up to
/// `m = ceil((n-1)/2)`, `f'(i) = f(n-i)` beyond, and `beta_i = f(n-i) - f(i)`.
pub fn benevolent_split(b: &ExactMatrix) -> Result<BenevolentSplit> {
    let profile = match extract_toeplitz_profile(b) {
        Verdict::Yes(p) => p,
        Verdict::No(w) => return Err(Error::precondition("matrix is not Toeplitz", Some(w))),
    };
    if let Verdict::No(w) = profile.check(ToeplitzFlag::DownBenevolent) {
        return Err(Error::precondition(
            "Toeplitz matrix is not down-benevolent",
            Some(w),
        ));
    }
    let n = profile.n();
    let m = profile.mid();
    let f = |k: usize| profile.f(k as isize).clone();
    let mut half = vec![f(0)];
    half.extend((1..n).map(|i| if i <= m { f(i) } else { f(n - i) }));
    let dw_profile = ToeplitzProfile::symmetric(half)?;
    let betas = (m + 1..n).map(|i| (i, f(n - i) - f(i))).collect();
    let out = BenevolentSplit { dw_profile, betas };
    debug_assert!(out.dw_profile.has(ToeplitzFlag::Dw));
    if out.reconstruct() != *b {
        return Err(Error::Internal("benevolent split does not rebuild the input".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn profile(v: &[i64]) -> ExactMatrix {
        ToeplitzProfile::symmetric(v.iter().map(|&x| int(x)).collect())
            .unwrap()
            .to_matrix()
    }

    #[test]
    fn malevolent_betas() {
        let b = profile(&[0, 28, 20, 10, 8, 0, 6, 0, 15, 10]);
        let s = benevolent_split(&b).unwrap();
        let got: Vec<_> = s.betas.iter().map(|(i, v)| (*i, v.clone())).collect();
        assert_eq!(got, vec![(6, int(2)), (7, int(10)), (8, int(5)), (9, int(18))]);
        assert!(s.dw_profile.has(ToeplitzFlag::Dw));
        assert_eq!(s.reconstruct(), b);
    }

    #[test]
    fn dw_input_has_zero_betas() {
        let b = profile(&[0, 12, 10, 5, 3, 0, 3, 5, 10, 12]);
        let s = benevolent_split(&b).unwrap();
        assert!(s.betas.iter().all(|(_, v)| *v == int(0)));
        assert_eq!(s.dw(), b);
    }

    #[test]
    fn rejects_up_benevolent() {
        let b = profile(&[0, 5, 13, 23, 25, 33, 27, 33, 18, 23]);
        assert!(matches!(benevolent_split(&b), Err(Error::Precondition { .. })));
    }
}
