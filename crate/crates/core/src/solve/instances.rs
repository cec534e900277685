use serde::{Deserialize, Serialize};

use super::{BSplit, CaseId};
use crate::error::Result;
use crate::generate::{random_instance, InstanceClass};
use crate::matrix::ExactMatrix;

/// A seeded pair `(A, B)` meeting the hypotheses of one case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseInstance {
    pub case: CaseId,
    pub a: ExactMatrix,
    pub b: ExactMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_split: Option<BSplit>,
}

impl CaseInstance {
    pub fn split(&self) -> Option<(&ExactMatrix, &ExactMatrix)> {
        self.b_split.as_ref().map(|s| (&s.b1, &s.b2))
    }
}

/// Builds an instance of `case` from independent seeded generators.
pub fn random_case_instance(case: CaseId, n: usize, seed: u64) -> Result<CaseInstance> {
    use InstanceClass as C;
    let g = |class: C, k: u64| -> Result<ExactMatrix> {
        Ok(random_instance(class, n, seed.wrapping_mul(7).wrapping_add(k))?
            .matrix()
            .clone())
    };
    let anti_monge = if seed % 2 == 0 {
        C::SymMonotoneAntiMonge
    } else {
        C::MonotoneAntiMonge
    };
    let (a, b, split) = match case {
        CaseId::Combined1 => {
            let b1 = g(anti_monge, 1)?;
            let b2 = g(C::DownBenevolent, 2)?;
            (g(C::CdwConic, 0)?, b1.add(&b2)?, Some((b1, b2)))
        }
        CaseId::Combined2 => {
            let b1 = g(C::PsMonge, 1)?;
            let b2 = g(C::RobinsonKalmanson, 2)?;
            (g(C::DownBenevolent, 0)?, b1.add(&b2)?, Some((b1, b2)))
        }
        CaseId::Combined3 => {
            let b1 = g(C::CyclicPsMonge, 1)?;
            let b2 = g(C::Kalmanson, 2)?;
            (g(C::DwToeplitz, 0)?, b1.add(&b2)?, Some((b1, b2)))
        }
        CaseId::DownBenevolent => (g(C::RobinsonKalmanson, 0)?, g(C::DownBenevolent, 1)?, None),
        CaseId::DwKalmansonDw => (g(C::Kalmanson, 0)?, g(C::DwToeplitz, 1)?, None),
        CaseId::LsRobinsonSimple => (g(C::Robinson, 0)?, g(C::SimpleToeplitz, 1)?, None),
        CaseId::CdwAntimonge => (g(C::CdwConic, 0)?, g(anti_monge, 1)?, None),
        CaseId::BcrwAntimongeBenevolent => (g(anti_monge, 0)?, g(C::UpBenevolent, 1)?, None),
        CaseId::UpBenevolentPs => (g(C::PsAntiMonge, 0)?, g(C::UpBenevolent, 1)?, None),
        CaseId::PsMongeDownBenevolent => (g(C::PsMonge, 0)?, g(C::DownBenevolent, 1)?, None),
    };
    Ok(CaseInstance {
        case,
        a,
        b,
        b_split: split.map(|(b1, b2)| BSplit { b1, b2 }),
    })
}
