//! Which solvable case an instance falls into, the certified optimum, and
//! the exhaustive oracles used to check it.
//!
//! Cases are tried in a fixed order, combined cases first:
//!
//! | case                       | A                                  | B                                      | optimum  |
//! |----------------------------|------------------------------------|----------------------------------------|----------|
//! | `combined_1`               | CDW conic                          | monotone anti-Monge + down-benevolent  | identity |
//! | `combined_2`               | down-benevolent Toeplitz           | PS monotone Monge + Kalmanson Robinson | identity |
//! | `combined_3`               | DW Toeplitz                        | cyclic PS monotone Monge + Kalmanson   | identity |
//! | `down_benevolent`          | Robinson and Kalmanson             | down-benevolent Toeplitz               | identity |
//! | `DW_kalmanson_dw`          | Kalmanson                          | DW Toeplitz                            | identity |
//! | `LS_robinson_simple`       | Robinson                           | simple Toeplitz                        | identity |
//! | `CDW_antimonge`            | CDW conic                          | monotone anti-Monge                    | identity |
//! | `BCRW_antimonge_benevolent`| monotone anti-Monge                | up-benevolent Toeplitz                 | Supnick  |
//! | `up_benevolent_PS`         | PS monotone anti-Monge             | up-benevolent Toeplitz                 | identity |
//! | `PSmonge_down_benevolent`  | PS monotone Monge                  | down-benevolent Toeplitz               | identity |
//!
//! The two cases whose B is not Toeplitz also need a constant diagonal on A
//! or B, since a CDW conic combination says nothing about the diagonal.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decompose::{cdw_decomposition, ConicDecomposition};
use crate::error::{Error, Result};
use crate::generate::{supnick_permutation, PsKind};
use crate::matrix::{qap_objective, ExactMatrix, Permutation};
use crate::rational::{self, Rational};
use crate::recognize::{
    check_kalmanson, check_monge_family, check_robinson, extract_toeplitz_profile, MongeVariant,
    ToeplitzFlag, ToeplitzProfile, Verdict,
};

mod brute;
mod instances;
mod split;

pub use brute::{brute_force, brute_force_with, selection_optimum, BruteForceOptions};
pub use instances::{random_case_instance, CaseInstance};
pub use split::{ps_membership, split_combined1, CombinedSplit, PsRepresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    #[serde(rename = "combined_1")]
    Combined1,
    #[serde(rename = "combined_2")]
    Combined2,
    #[serde(rename = "combined_3")]
    Combined3,
    #[serde(rename = "down_benevolent")]
    DownBenevolent,
    #[serde(rename = "DW_kalmanson_dw")]
    DwKalmansonDw,
    #[serde(rename = "LS_robinson_simple")]
    LsRobinsonSimple,
    #[serde(rename = "CDW_antimonge")]
    CdwAntimonge,
    #[serde(rename = "BCRW_antimonge_benevolent")]
    BcrwAntimongeBenevolent,
    #[serde(rename = "up_benevolent_PS")]
    UpBenevolentPs,
    #[serde(rename = "PSmonge_down_benevolent")]
    PsMongeDownBenevolent,
}

impl CaseId {
    /// Detection order.
    pub const ALL: [CaseId; 10] = [
        CaseId::Combined1,
        CaseId::Combined2,
        CaseId::Combined3,
        CaseId::DownBenevolent,
        CaseId::DwKalmansonDw,
        CaseId::LsRobinsonSimple,
        CaseId::CdwAntimonge,
        CaseId::BcrwAntimongeBenevolent,
        CaseId::UpBenevolentPs,
        CaseId::PsMongeDownBenevolent,
    ];

    pub fn name(self) -> &'static str {
        use CaseId::*;
        match self {
            Combined1 => "combined_1",
            Combined2 => "combined_2",
            Combined3 => "combined_3",
            DownBenevolent => "down_benevolent",
            DwKalmansonDw => "DW_kalmanson_dw",
            LsRobinsonSimple => "LS_robinson_simple",
            CdwAntimonge => "CDW_antimonge",
            BcrwAntimongeBenevolent => "BCRW_antimonge_benevolent",
            UpBenevolentPs => "up_benevolent_PS",
            PsMongeDownBenevolent => "PSmonge_down_benevolent",
        }
    }

    pub fn optimal_permutation(self, n: usize) -> Permutation {
        match self {
            CaseId::BcrwAntimongeBenevolent => supnick_permutation(n),
            _ => Permutation::identity(n),
        }
    }

    /// Hypotheses the evidence has to cover.
    fn requirements(self) -> Vec<Requirement> {
        use CaseId::*;
        use Kind::*;
        use Operand::*;
        use Requirement::{Either, On};
        let dw = |f| Toeplitz(f);
        match self {
            Combined1 => vec![
                On(CdwConic, A),
                Either(ConstantDiagonal, A, B),
                On(MonotoneAntiMonge, B1),
                On(dw(ToeplitzFlag::DownBenevolent), B2),
            ],
            Combined2 => vec![
                On(dw(ToeplitzFlag::DownBenevolent), A),
                On(Ps(PsKind::Monge, false), B1),
                On(Robinson, B2),
                On(Kalmanson, B2),
            ],
            Combined3 => vec![
                On(dw(ToeplitzFlag::Dw), A),
                On(Ps(PsKind::Monge, true), B1),
                On(Kalmanson, B2),
            ],
            DownBenevolent => vec![
                On(Robinson, A),
                On(Kalmanson, A),
                On(dw(ToeplitzFlag::DownBenevolent), B),
            ],
            DwKalmansonDw => vec![On(Kalmanson, A), On(dw(ToeplitzFlag::Dw), B)],
            LsRobinsonSimple => vec![On(Robinson, A), On(dw(ToeplitzFlag::Simple), B)],
            CdwAntimonge => vec![
                On(CdwConic, A),
                Either(ConstantDiagonal, A, B),
                On(MonotoneAntiMonge, B),
            ],
            BcrwAntimongeBenevolent => vec![
                On(MonotoneAntiMonge, A),
                On(dw(ToeplitzFlag::UpBenevolent), B),
            ],
            UpBenevolentPs => vec![
                On(Ps(PsKind::AntiMonge, false), A),
                On(dw(ToeplitzFlag::UpBenevolent), B),
            ],
            PsMongeDownBenevolent => vec![
                On(Ps(PsKind::Monge, false), A),
                On(dw(ToeplitzFlag::DownBenevolent), B),
            ],
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown case {s:?}")))
    }
}

/// Which matrix a hypothesis is about. `B1` and `B2` are the parts of a split B.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Operand {
    A,
    B,
    B1,
    B2,
}

/// One hypothesis with enough data to re-check it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "hypothesis", rename_all = "snake_case")]
pub enum Evidence {
    Robinson { on: Operand },
    Kalmanson { on: Operand },
    MonotoneAntiMonge { on: Operand },
    ConstantDiagonal {
        on: Operand,
        #[serde(with = "rational::serde_str")]
        value: Rational,
    },
    Toeplitz {
        on: Operand,
        flag: ToeplitzFlag,
        profile: ToeplitzProfile,
    },
    CdwConic {
        on: Operand,
        decomposition: ConicDecomposition,
    },
    PsCone {
        on: Operand,
        representation: PsRepresentation,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Robinson,
    Kalmanson,
    MonotoneAntiMonge,
    ConstantDiagonal,
    Toeplitz(ToeplitzFlag),
    CdwConic,
    Ps(PsKind, bool),
}

#[derive(Clone, Copy, Debug)]
enum Requirement {
    On(Kind, Operand),
    Either(Kind, Operand, Operand),
}

impl Evidence {
    pub fn operand(&self) -> Operand {
        match self {
            Evidence::Robinson { on }
            | Evidence::Kalmanson { on }
            | Evidence::MonotoneAntiMonge { on }
            | Evidence::ConstantDiagonal { on, .. }
            | Evidence::Toeplitz { on, .. }
            | Evidence::CdwConic { on, .. }
            | Evidence::PsCone { on, .. } => *on,
        }
    }

    fn kind(&self) -> Kind {
        match self {
            Evidence::Robinson { .. } => Kind::Robinson,
            Evidence::Kalmanson { .. } => Kind::Kalmanson,
            Evidence::MonotoneAntiMonge { .. } => Kind::MonotoneAntiMonge,
            Evidence::ConstantDiagonal { .. } => Kind::ConstantDiagonal,
            Evidence::Toeplitz { flag, .. } => Kind::Toeplitz(*flag),
            Evidence::CdwConic { .. } => Kind::CdwConic,
            Evidence::PsCone { representation, .. } => {
                Kind::Ps(representation.kind, representation.cyclic)
            }
        }
    }

    /// Re-runs the recognizer, or rebuilds the matrix from the stored data.
    pub fn holds_for(&self, m: &ExactMatrix) -> bool {
        match self {
            Evidence::Robinson { .. } => matches!(check_robinson(m), Ok(Verdict::Yes(()))),
            Evidence::Kalmanson { .. } => matches!(check_kalmanson(m), Ok(Verdict::Yes(()))),
            Evidence::MonotoneAntiMonge { .. } => {
                check_monge_family(m, MongeVariant::MonotoneAntiMonge).is_yes()
            }
            Evidence::ConstantDiagonal { value, .. } => (0..m.n()).all(|i| m.get(i, i) == value),
            Evidence::Toeplitz { flag, profile, .. } => {
                extract_toeplitz_profile(m).ok().as_ref() == Some(profile) && profile.has(*flag)
            }
            Evidence::CdwConic { decomposition, .. } => {
                decomposition.n == m.n()
                    && m.is_symmetric()
                    && decomposition.all_cdw()
                    && decomposition.check_positive().is_ok()
                    && decomposition.residual_gammas.is_none()
                    && decomposition.reconstructs(m)
            }
            Evidence::PsCone { representation, .. } => representation.represents(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BSplit {
    pub b1: ExactMatrix,
    pub b2: ExactMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCertificate {
    pub case: CaseId,
    pub optimal_permutation: Permutation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_split: Option<BSplit>,
    pub evidence: Vec<Evidence>,
}

impl CaseCertificate {
    /// Checks every hypothesis of the case against `(a, b)` using only the
    /// stored evidence. Returns the first problem found.
    pub fn recheck(&self, a: &ExactMatrix, b: &ExactMatrix) -> std::result::Result<(), String> {
        if a.n() != b.n() {
            return Err("A and B differ in size".into());
        }
        if self.optimal_permutation != self.case.optimal_permutation(a.n()) {
            return Err(format!("{} does not prescribe {}", self.case, self.optimal_permutation));
        }
        if let Some(s) = &self.b_split {
            if s.b1.add(&s.b2).ok().as_ref() != Some(b) {
                return Err("B1 + B2 differs from B".into());
            }
        }
        let resolve = |on: Operand| -> Option<&ExactMatrix> {
            match on {
                Operand::A => Some(a),
                Operand::B => Some(b),
                Operand::B1 => self.b_split.as_ref().map(|s| &s.b1),
                Operand::B2 => self.b_split.as_ref().map(|s| &s.b2),
            }
        };
        for e in &self.evidence {
            let m = resolve(e.operand()).ok_or_else(|| format!("{:?} needs a B split", e.operand()))?;
            if !e.holds_for(m) {
                return Err(format!("{:?} fails on {:?}", e.kind(), e.operand()));
            }
        }
        let has = |k: Kind, on: Operand| self.evidence.iter().any(|e| e.kind() == k && e.operand() == on);
        for r in self.case.requirements() {
            let ok = match r {
                Requirement::On(k, on) => has(k, on),
                Requirement::Either(k, x, y) => has(k, x) || has(k, y),
            };
            if !ok {
                return Err(format!("missing evidence for {r:?}"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum SolutionCertificate {
    Case(CaseCertificate),
    BruteForce { maximize: bool, permutations: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub permutation: Permutation,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub certificate: SolutionCertificate,
}

impl Solution {
    pub fn case(&self) -> Option<CaseId> {
        match &self.certificate {
            SolutionCertificate::Case(c) => Some(c.case),
            SolutionCertificate::BruteForce { .. } => None,
        }
    }
}

fn robinson(m: &ExactMatrix, on: Operand) -> Option<Evidence> {
    matches!(check_robinson(m), Ok(Verdict::Yes(()))).then_some(Evidence::Robinson { on })
}

fn kalmanson(m: &ExactMatrix, on: Operand) -> Option<Evidence> {
    matches!(check_kalmanson(m), Ok(Verdict::Yes(()))).then_some(Evidence::Kalmanson { on })
}

fn anti_monge(m: &ExactMatrix, on: Operand) -> Option<Evidence> {
    check_monge_family(m, MongeVariant::MonotoneAntiMonge)
        .is_yes()
        .then_some(Evidence::MonotoneAntiMonge { on })
}

fn toeplitz(m: &ExactMatrix, on: Operand, flag: ToeplitzFlag) -> Option<Evidence> {
    let profile = extract_toeplitz_profile(m).ok()?;
    profile.has(flag).then_some(Evidence::Toeplitz { on, flag, profile })
}

fn cdw_conic(m: &ExactMatrix, on: Operand) -> Result<Option<Evidence>> {
    if !m.is_symmetric() {
        return Ok(None);
    }
    match cdw_decomposition(m) {
        Ok(Verdict::Yes(decomposition)) => Ok(Some(Evidence::CdwConic { on, decomposition })),
        Ok(Verdict::No(_)) | Err(Error::Precondition { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn ps_cone(m: &ExactMatrix, on: Operand, kind: PsKind, cyclic: bool) -> Option<Evidence> {
    ps_membership(m, kind, cyclic).map(|representation| Evidence::PsCone { on, representation })
}

fn constant_diagonal(a: &ExactMatrix, b: &ExactMatrix) -> Option<Evidence> {
    [(a, Operand::A), (b, Operand::B)].into_iter().find_map(|(m, on)| {
        let v = m.get(0, 0);
        (0..m.n())
            .all(|i| m.get(i, i) == v)
            .then(|| Evidence::ConstantDiagonal { on, value: v.clone() })
    })
}

fn all(parts: Vec<Option<Evidence>>) -> Option<Vec<Evidence>> {
    parts.into_iter().collect()
}

/// Finds the first case, in the documented order, whose hypotheses hold.
/// `b_split` must add up to B; combined case 1 also searches a split itself.
pub fn detect_case(
    a: &ExactMatrix,
    b: &ExactMatrix,
    b_split: Option<(&ExactMatrix, &ExactMatrix)>,
) -> Result<Option<CaseCertificate>> {
    a.require_same_n(b)?;
    let n = a.n();
    if let Some((b1, b2)) = b_split {
        b.require_same_n(b1)?;
        b.require_same_n(b2)?;
        if b1.add(b2)? != *b {
            return Err(Error::precondition("B1 + B2 does not equal B", None));
        }
    }
    let given = b_split.map(|(b1, b2)| BSplit {
        b1: b1.clone(),
        b2: b2.clone(),
    });
    let cert = |case: CaseId, evidence: Vec<Evidence>, b_split: Option<BSplit>| CaseCertificate {
        case,
        optimal_permutation: case.optimal_permutation(n),
        b_split,
        evidence,
    };

    // Cheap facts first; the LP-backed ones only when a case needs them.
    let a_cdw = cdw_conic(a, Operand::A)?;
    let diag = constant_diagonal(a, b);

    if let (Some(cdw), Some(diag)) = (&a_cdw, &diag) {
        let mut splits = Vec::new();
        if let Some(s) = &given {
            splits.push(s.clone());
        }
        if let Some(s) = split_combined1(b) {
            splits.push(BSplit { b1: s.b1, b2: s.b2 });
        }
        for s in splits {
            if let Some(ev) = all(vec![
                Some(cdw.clone()),
                Some(diag.clone()),
                anti_monge(&s.b1, Operand::B1),
                toeplitz(&s.b2, Operand::B2, ToeplitzFlag::DownBenevolent),
            ]) {
                return Ok(Some(cert(CaseId::Combined1, ev, Some(s))));
            }
        }
    }

    if let Some(s) = &given {
        if let Some(ta) = toeplitz(a, Operand::A, ToeplitzFlag::DownBenevolent) {
            if let (Some(r), Some(k)) = (robinson(&s.b2, Operand::B2), kalmanson(&s.b2, Operand::B2)) {
                if let Some(ps) = ps_cone(&s.b1, Operand::B1, PsKind::Monge, false) {
                    return Ok(Some(cert(CaseId::Combined2, vec![ta, ps, r, k], Some(s.clone()))));
                }
            }
        }
        if let Some(ta) = toeplitz(a, Operand::A, ToeplitzFlag::Dw) {
            if let Some(k) = kalmanson(&s.b2, Operand::B2) {
                if let Some(ps) = ps_cone(&s.b1, Operand::B1, PsKind::Monge, true) {
                    return Ok(Some(cert(CaseId::Combined3, vec![ta, ps, k], Some(s.clone()))));
                }
            }
        }
    }

    let simple: [(CaseId, Vec<Option<Evidence>>); 3] = [
        (
            CaseId::DownBenevolent,
            vec![
                robinson(a, Operand::A),
                kalmanson(a, Operand::A),
                toeplitz(b, Operand::B, ToeplitzFlag::DownBenevolent),
            ],
        ),
        (
            CaseId::DwKalmansonDw,
            vec![kalmanson(a, Operand::A), toeplitz(b, Operand::B, ToeplitzFlag::Dw)],
        ),
        (
            CaseId::LsRobinsonSimple,
            vec![robinson(a, Operand::A), toeplitz(b, Operand::B, ToeplitzFlag::Simple)],
        ),
    ];
    for (case, parts) in simple {
        if let Some(ev) = all(parts) {
            return Ok(Some(cert(case, ev, None)));
        }
    }

    if let Some(ev) = all(vec![a_cdw, diag, anti_monge(b, Operand::B)]) {
        return Ok(Some(cert(CaseId::CdwAntimonge, ev, None)));
    }

    if let Some(up) = toeplitz(b, Operand::B, ToeplitzFlag::UpBenevolent) {
        if let Some(am) = anti_monge(a, Operand::A) {
            return Ok(Some(cert(CaseId::BcrwAntimongeBenevolent, vec![am, up], None)));
        }
        if let Some(ps) = ps_cone(a, Operand::A, PsKind::AntiMonge, false) {
            return Ok(Some(cert(CaseId::UpBenevolentPs, vec![ps, up], None)));
        }
    }
    if let Some(down) = toeplitz(b, Operand::B, ToeplitzFlag::DownBenevolent) {
        if let Some(ps) = ps_cone(a, Operand::A, PsKind::Monge, false) {
            return Ok(Some(cert(CaseId::PsMongeDownBenevolent, vec![ps, down], None)));
        }
    }
    Ok(None)
}

/// The certified optimum of a recognized instance; never enumerates.
pub fn solve_structured(
    a: &ExactMatrix,
    b: &ExactMatrix,
    b_split: Option<(&ExactMatrix, &ExactMatrix)>,
) -> Result<Solution> {
    let cert = detect_case(a, b, b_split)?
        .ok_or_else(|| Error::precondition("no solvable case applies to this instance", None))?;
    let permutation = cert.optimal_permutation.clone();
    let value = qap_objective(a, b, &permutation)?;
    Ok(Solution {
        permutation,
        value,
        certificate: SolutionCertificate::Case(cert),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{random_instance, InstanceClass};

    fn gen(class: InstanceClass, n: usize, seed: u64) -> ExactMatrix {
        random_instance(class, n, seed).unwrap().matrix().clone()
    }

    #[test]
    fn names_round_trip() {
        for c in CaseId::ALL {
            assert_eq!(c.name().parse::<CaseId>().unwrap(), c);
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(json, format!("\"{}\"", c.name()));
        }
    }

    #[test]
    fn certificates_recheck() {
        let pairs = [
            (InstanceClass::RobinsonKalmanson, InstanceClass::DownBenevolent),
            (InstanceClass::Kalmanson, InstanceClass::DwToeplitz),
            (InstanceClass::Robinson, InstanceClass::SimpleToeplitz),
            (InstanceClass::CdwConic, InstanceClass::SymMonotoneAntiMonge),
            (InstanceClass::MonotoneAntiMonge, InstanceClass::UpBenevolent),
        ];
        for (ca, cb) in pairs {
            let a = gen(ca, 6, 11);
            let b = gen(cb, 6, 12);
            let c = detect_case(&a, &b, None).unwrap().expect("in class by construction");
            c.recheck(&a, &b).unwrap();
        }
    }

    #[test]
    fn tampered_certificate_fails() {
        let a = gen(InstanceClass::RobinsonKalmanson, 6, 1);
        let b = gen(InstanceClass::DownBenevolent, 6, 2);
        let mut c = detect_case(&a, &b, None).unwrap().unwrap();
        c.case = CaseId::BcrwAntimongeBenevolent;
        assert!(c.recheck(&a, &b).is_err());
    }

    #[test]
    fn zero_b_has_value_zero() {
        let a = gen(InstanceClass::RobinsonKalmanson, 5, 3);
        let b = ExactMatrix::zeros(5);
        let s = solve_structured(&a, &b, None).unwrap();
        assert_eq!(s.value, Rational::from_integer(0.into()));
    }

    #[test]
    fn inconsistent_split_is_an_error() {
        let a = ExactMatrix::zeros(3);
        let b = ExactMatrix::zeros(3);
        let b1 = ExactMatrix::constant(3, Rational::from_integer(1.into()));
        assert!(detect_case(&a, &b, Some((&b1, &b))).is_err());
    }
}
