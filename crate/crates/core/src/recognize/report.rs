use serde::{Deserialize, Serialize};

use super::{
    check_cut_matrix, check_kalmanson, check_monge_family, check_robinson, check_robinson_with,
    check_sum_family, extract_toeplitz_profile, MongeVariant, RobinsonKind, SumVariant,
    ToeplitzFlag, ToeplitzProfile, Verdict, Witness,
};
use crate::blocks::BlockPartition;
use crate::decompose::cdw_feasibility_any;
use crate::matrix::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Yes,
    No,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub class: String,
    pub verdict: VerdictKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
}

impl ClassEntry {
    fn from_verdict<T: Serialize>(class: &str, v: Verdict<T>) -> Self {
        let (verdict, witness, certificate) = match v {
            Verdict::Yes(t) => {
                let c = serde_json::to_value(t).ok().filter(|c| !c.is_null());
                (VerdictKind::Yes, None, c)
            }
            Verdict::No(w) => (VerdictKind::No, Some(w), None),
        };
        Self {
            class: class.to_string(),
            verdict,
            witness,
            note: None,
            certificate,
        }
    }

    fn not_applicable(class: &str, note: impl Into<String>) -> Self {
        Self {
            class: class.to_string(),
            verdict: VerdictKind::NotApplicable,
            witness: None,
            note: Some(note.into()),
            certificate: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub symmetric: bool,
    pub classes: Vec<ClassEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toeplitz_profile: Option<ToeplitzProfile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut_partition: Option<BlockPartition>,
}

impl ClassificationReport {
    pub fn entry(&self, class: &str) -> Option<&ClassEntry> {
        self.classes.iter().find(|e| e.class == class)
    }

    pub fn verdict(&self, class: &str) -> Option<VerdictKind> {
        self.entry(class).map(|e| e.verdict)
    }
}

/// Runs every recognizer. Tests that need a symmetric matrix are reported as
/// not applicable on asymmetric input, the CDW test also needs the matrix to
/// be Robinson and Kalmanson.
pub fn classify(a: &ExactMatrix) -> ClassificationReport {
    let symmetric = a.is_symmetric();
    let mut classes = Vec::new();
    let asym = "requires a symmetric matrix";

    let robinson = symmetric.then(|| check_robinson(a).expect("symmetric"));
    let kalmanson = symmetric.then(|| check_kalmanson(a).expect("symmetric"));
    match &robinson {
        Some(v) => classes.push(ClassEntry::from_verdict("robinson", v.clone())),
        None => classes.push(ClassEntry::not_applicable("robinson", asym)),
    }
    if symmetric {
        let sim = check_robinson_with(a, RobinsonKind::Similarity).expect("symmetric");
        classes.push(ClassEntry::from_verdict("robinson_similarity", sim));
    } else {
        classes.push(ClassEntry::not_applicable("robinson_similarity", asym));
    }
    match &kalmanson {
        Some(v) => classes.push(ClassEntry::from_verdict("kalmanson", v.clone())),
        None => classes.push(ClassEntry::not_applicable("kalmanson", asym)),
    }

    for variant in MongeVariant::ALL {
        classes.push(ClassEntry::from_verdict(
            variant.name(),
            check_monge_family(a, variant),
        ));
    }

    let toeplitz = extract_toeplitz_profile(a);
    let profile = toeplitz.clone().ok();
    classes.push(ClassEntry::from_verdict("toeplitz", toeplitz.clone().map(|_| ())));
    for flag in ToeplitzFlag::ALL {
        let class = match flag {
            ToeplitzFlag::Symmetric => "symmetric_toeplitz".to_string(),
            ToeplitzFlag::Circulant => "circulant".to_string(),
            ToeplitzFlag::Simple => "simple_toeplitz".to_string(),
            ToeplitzFlag::Dw => "dw_toeplitz".to_string(),
            f => f.name().to_string(),
        };
        let entry = match (&profile, &toeplitz) {
            (Some(p), _) => ClassEntry::from_verdict(&class, p.check(flag)),
            (None, Verdict::No(w)) => ClassEntry::from_verdict::<()>(&class, Verdict::No(w.clone())),
            (None, Verdict::Yes(_)) => unreachable!(),
        };
        classes.push(entry);
    }

    for variant in SumVariant::ALL {
        let needs_sym = variant == SumVariant::WeakSum;
        if needs_sym && !symmetric {
            classes.push(ClassEntry::not_applicable(variant.name(), asym));
            continue;
        }
        let v = check_sum_family(a, variant).expect("symmetry checked");
        classes.push(ClassEntry::from_verdict(variant.name(), v));
    }

    let cut = check_cut_matrix(a);
    let cut_partition = cut.clone().ok();
    classes.push(ClassEntry::from_verdict("cut_matrix", cut.map(|_| ())));

    match (&robinson, &kalmanson) {
        (Some(Verdict::Yes(_)), Some(Verdict::Yes(_))) => {
            let v = cdw_feasibility_any(a).expect("preconditions checked above");
            classes.push(ClassEntry::from_verdict("cdw_conic", v));
        }
        _ => classes.push(ClassEntry::not_applicable(
            "cdw_conic",
            "requires a matrix that is both Robinson and Kalmanson",
        )),
    }

    ClassificationReport {
        n: a.n(),
        symmetric,
        classes,
        toeplitz_profile: profile,
        cut_partition,
    }
}
