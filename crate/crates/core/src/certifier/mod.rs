//! Certificates: replayable decompositions of an inclusion into pushouts of
//! generators, scaling extensions and transported sub-certificates.
//!
//! Objects are [`Collapsed`] values. A collapsed edge stands for the pushout
//! along `Δ¹♯ → Δ⁰`; triangles with a collapsed edge between adjacent
//! vertices count as degenerate, hence thin.

mod audit;
mod lemmas;
mod search;
mod theta;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::VertexMap;
use crate::generators::GeneratorKind;
use crate::scaling::Collapsed;

pub use audit::{audit_certificate, AuditOutcome};
pub use lemmas::{
    certify_cosegal, certify_inner_horn, certify_lemma_minus, certify_lemma_plus, sigma_minus,
    sigma_plus,
};
pub use search::{an2_attach, candidate_steps, search_decomposition, search_steps, SearchOptions};
pub use theta::{certify_theta, d_iso_check, reachability_gaps, DIsoReport};
pub use verify::{apply_step, verify_certificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertClass {
    ScaledAnodyne,
    TrivialCofibration,
}

impl fmt::Display for CertClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertClass::ScaledAnodyne => "scaled_anodyne",
            CertClass::TrivialCofibration => "trivial_cofibration",
        })
    }
}

/// One generator glued in along a vertex map from its labels "0".."r".
/// The attach map is injective, so it is also the realization of the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attach {
    pub gen: GeneratorKind,
    pub attach: VertexMap,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_s: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    GeneratorPushout(Attach),
    /// An2 attached along a possibly degenerate map Δ⁴ → X; adds marks only.
    ScalingExtension {
        attach: VertexMap,
    },
    /// Pushout of a verified certificate along an injective vertex map.
    Transport {
        inner: Box<Certificate>,
        along: VertexMap,
    },
    /// Several generators glued in at once; interiors pairwise disjoint.
    BatchPushout {
        entries: Vec<Attach>,
    },
}

impl Step {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Step::GeneratorPushout(_) => "generator_pushout",
            Step::ScalingExtension { .. } => "scaling_extension",
            Step::Transport { .. } => "transport",
            Step::BatchPushout { .. } => "batch_pushout",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub class: CertClass,
    pub start: Collapsed,
    pub target: Collapsed,
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    /// Total number of steps, counting inside transports and batches.
    pub fn size(&self) -> usize {
        self.steps
            .iter()
            .map(|s| match s {
                Step::Transport { inner, .. } => 1 + inner.size(),
                Step::BatchPushout { entries } => entries.len(),
                _ => 1,
            })
            .sum()
    }

    /// All generator attachments, including those inside transports.
    pub fn attachments(&self) -> Vec<&Attach> {
        let mut out = Vec::new();
        for s in &self.steps {
            match s {
                Step::GeneratorPushout(a) => out.push(a),
                Step::BatchPushout { entries } => out.extend(entries.iter()),
                Step::Transport { inner, .. } => out.extend(inner.attachments()),
                Step::ScalingExtension { .. } => {}
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Index of the failing top-level step; `None` for start/target problems.
    pub step: Option<usize>,
    /// Dotted path into nested transports and batches, e.g. "4.2".
    pub path: String,
    pub reason: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.reason)
        } else {
            write!(f, "step {}: {}", self.path, self.reason)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub class: CertClass,
    pub first_failure: Option<Failure>,
    pub stats: BTreeMap<String, usize>,
}
