//! Grapes: recursive vertex decompositions with a variant-specific gluing
//! condition, recognized with replayable certificates.
//!
//! A complex with at most one vertex is a grape of every variant. Otherwise
//! some pivot `a` must have `lk_a` and `dl_a` grapes of the same variant, and
//!
//! * strong combinatorial: `lk_a` or `dl_a` is a cone;
//! * combinatorial: `lk_a` lies in a cone that lies in `dl_a`;
//! * weak combinatorial: some collapsible `Γ` satisfies `lk_a ⊆ Γ ⊆ dl_a`;
//! * strong-weak combinatorial: `lk_a` or `dl_a` is collapsible.
//!
//! Collapsibility stands in for simple-homotopy triviality; see
//! [`crate::homotopy`].

mod replay;
mod search;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, ComplexJson};
use crate::error::{Error, Result};
use crate::homotopy::{CollapseSequenceJson, DEFAULT_BUDGET};
use crate::report::Status;

pub use replay::verify_certificate;
pub use search::{check_grape, EXHAUSTIVE_GAMMA_MAX_GROUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GrapeVariant {
    #[serde(rename = "comb")]
    Combinatorial,
    #[serde(rename = "strong")]
    StrongCombinatorial,
    #[serde(rename = "weak")]
    WeakCombinatorial,
    #[serde(rename = "strong-weak")]
    StrongWeakCombinatorial,
}

impl GrapeVariant {
    pub const ALL: [GrapeVariant; 4] = [
        GrapeVariant::StrongCombinatorial,
        GrapeVariant::Combinatorial,
        GrapeVariant::StrongWeakCombinatorial,
        GrapeVariant::WeakCombinatorial,
    ];

    /// Variants whose condition relies on collapsibility search.
    pub fn is_weak(self) -> bool {
        matches!(
            self,
            GrapeVariant::WeakCombinatorial | GrapeVariant::StrongWeakCombinatorial
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GrapeVariant::Combinatorial => "comb",
            GrapeVariant::StrongCombinatorial => "strong",
            GrapeVariant::WeakCombinatorial => "weak",
            GrapeVariant::StrongWeakCombinatorial => "strong-weak",
        }
    }
}

impl fmt::Display for GrapeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GrapeVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "comb" | "combinatorial" => Ok(GrapeVariant::Combinatorial),
            "strong" => Ok(GrapeVariant::StrongCombinatorial),
            "weak" => Ok(GrapeVariant::WeakCombinatorial),
            "strong-weak" | "strong_weak" => Ok(GrapeVariant::StrongWeakCombinatorial),
            other => Err(Error::Input(format!("unknown grape variant `{other}`"))),
        }
    }
}

/// Simple-homotopy class of a strong combinatorial grape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", content = "n", rename_all = "snake_case")]
pub enum ShClass {
    Void,
    /// `∂βₙ`, a triangulated `(n−1)`-sphere; `n = 0` is the irrelevant complex.
    CrossPolytopeBoundary(usize),
}

impl ShClass {
    pub fn suspend(self) -> Self {
        match self {
            ShClass::Void => ShClass::Void,
            ShClass::CrossPolytopeBoundary(n) => ShClass::CrossPolytopeBoundary(n + 1),
        }
    }

    /// Class of the Alexander dual on a ground set of `ground` elements.
    ///
    /// `None` when `ground == 0` or the dimension would be negative.
    pub fn dual(self, ground: usize) -> Option<Self> {
        if ground == 0 {
            return None;
        }
        match self {
            ShClass::Void => Some(ShClass::Void),
            ShClass::CrossPolytopeBoundary(n) => ground
                .checked_sub(n + 1)
                .map(ShClass::CrossPolytopeBoundary),
        }
    }
}

impl fmt::Display for ShClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShClass::Void => f.write_str("void"),
            ShClass::CrossPolytopeBoundary(n) => write!(f, "∂β{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseKind {
    Void,
    Irrelevant,
    Point,
}

impl BaseKind {
    /// Kind of a complex with at most one vertex.
    pub fn of(c: &Complex) -> Option<BaseKind> {
        if c.is_void() {
            Some(BaseKind::Void)
        } else if c.is_irrelevant() {
            Some(BaseKind::Irrelevant)
        } else if c.vertices().len() == 1 {
            Some(BaseKind::Point)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeSide {
    Link,
    Deletion,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Link,
    Deletion,
}

/// Which member of the weak witness family produced `Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaSource {
    Link,
    Deletion,
    Cone,
    Enumerated,
}

/// Evidence for the gluing condition at one pivot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VariantWitness {
    Strong {
        side: ConeSide,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        link_apex: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        deletion_apex: Option<String>,
    },
    /// `A_apex(lk) ⊆ dl`.
    Combinatorial { apex: String },
    Weak {
        source: GammaSource,
        gamma: ComplexJson,
        collapse: CollapseSequenceJson,
    },
    StrongWeak {
        side: Side,
        collapse: CollapseSequenceJson,
    },
}

/// Replayable proof that a complex is a grape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CertificateTree {
    Base {
        base: BaseKind,
    },
    Split {
        pivot: String,
        witness: VariantWitness,
        link: Box<CertificateTree>,
        deletion: Box<CertificateTree>,
    },
}

impl CertificateTree {
    pub fn depth(&self) -> usize {
        match self {
            CertificateTree::Base { .. } => 0,
            CertificateTree::Split { link, deletion, .. } => 1 + link.depth().max(deletion.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            CertificateTree::Base { .. } => 1,
            CertificateTree::Split { link, deletion, .. } => {
                1 + link.node_count() + deletion.node_count()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrapeVerdict {
    Yes(CertificateTree),
    No,
    Unknown(String),
}

impl GrapeVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, GrapeVerdict::Yes(_))
    }

    pub fn certificate(&self) -> Option<&CertificateTree> {
        match self {
            GrapeVerdict::Yes(cert) => Some(cert),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            GrapeVerdict::Yes(_) => "yes",
            GrapeVerdict::No => "no",
            GrapeVerdict::Unknown(_) => "unknown",
        }
    }

    /// Verdict without its certificate, for comparisons.
    pub fn kind(&self) -> VerdictKind {
        match self {
            GrapeVerdict::Yes(_) => VerdictKind::Yes,
            GrapeVerdict::No => VerdictKind::No,
            GrapeVerdict::Unknown(_) => VerdictKind::Unknown,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Yes,
    No,
    Unknown,
}

/// Search configuration.
///
/// `budget` bounds each individual collapse search (in search-tree nodes).
/// `exhaustive_gamma` switches collapse searches to exhaustive mode and, for
/// grounds of at most [`EXHAUSTIVE_GAMMA_MAX_GROUND`] elements, enumerates
/// every `Γ` between link and deletion; only then can weak variants answer No.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrapeOptions {
    pub budget: u64,
    pub exhaustive_gamma: bool,
}

impl Default for GrapeOptions {
    fn default() -> Self {
        GrapeOptions {
            budget: DEFAULT_BUDGET,
            exhaustive_gamma: false,
        }
    }
}

/// Branch to follow when both link and deletion are cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    PreferDeletion,
    PreferLink,
}

/// Simple-homotopy class read off a strong certificate.
pub fn classify_strong(c: &Complex, cert: &CertificateTree) -> Result<ShClass> {
    classify_strong_with(c, cert, TieBreak::PreferDeletion)
}

/// As [`classify_strong`], with an explicit tie-break.
///
/// If the deletion is a cone, `c` is simple-homotopy equivalent to the
/// suspension of the link; if the link is a cone, `c` collapses onto the
/// deletion.
pub fn classify_strong_with(c: &Complex, cert: &CertificateTree, tie: TieBreak) -> Result<ShClass> {
    match cert {
        CertificateTree::Base { base } => {
            check_base(c, *base)?;
            Ok(match base {
                BaseKind::Void | BaseKind::Point => ShClass::Void,
                BaseKind::Irrelevant => ShClass::CrossPolytopeBoundary(0),
            })
        }
        CertificateTree::Split {
            pivot,
            witness,
            link,
            deletion,
        } => {
            let VariantWitness::Strong { side, .. } = witness else {
                return Err(Error::Contract(format!(
                    "pivot `{pivot}` carries a non-strong witness"
                )));
            };
            let lk = c.link(pivot)?;
            let dl = c.deletion(pivot)?;
            let use_deletion_cone = match side {
                ConeSide::Deletion => true,
                ConeSide::Link => false,
                ConeSide::Both => tie == TieBreak::PreferDeletion,
            };
            if use_deletion_cone {
                if dl.is_cone().is_none() {
                    return Err(Error::Contract(format!(
                        "deletion at `{pivot}` is not a cone"
                    )));
                }
                Ok(classify_strong_with(&lk, link, tie)?.suspend())
            } else {
                if lk.is_cone().is_none() {
                    return Err(Error::Contract(format!("link at `{pivot}` is not a cone")));
                }
                classify_strong_with(&dl, deletion, tie)
            }
        }
    }
}

pub(crate) fn check_base(c: &Complex, base: BaseKind) -> Result<()> {
    match BaseKind::of(c) {
        Some(kind) if kind == base => Ok(()),
        Some(kind) => Err(Error::Contract(format!(
            "base leaf claims {base:?} but the complex is {kind:?}"
        ))),
        None => Err(Error::Contract(format!(
            "base leaf reached with {} vertices",
            c.vertices().len()
        ))),
    }
}

/// Multiset of sphere dimensions whose wedge a grape is homotopy equivalent
/// to; empty means contractible (or void).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereWedge {
    pub multiplicity: BTreeMap<i64, usize>,
}

impl SphereWedge {
    pub fn is_contractible(&self) -> bool {
        self.multiplicity.is_empty()
    }

    pub fn betti(&self, k: i64) -> usize {
        self.multiplicity.get(&k).copied().unwrap_or(0)
    }

    fn add(&mut self, k: i64, m: usize) {
        *self.multiplicity.entry(k).or_insert(0) += m;
    }
}

/// Predicted reduced Betti numbers from a certificate:
/// `wedge(Δ) = wedge(dl) ⊎ (wedge(lk) shifted up by one)`.
pub fn predicted_wedge(c: &Complex, cert: &CertificateTree) -> Result<SphereWedge> {
    match cert {
        CertificateTree::Base { base } => {
            check_base(c, *base)?;
            let mut w = SphereWedge::default();
            if *base == BaseKind::Irrelevant {
                w.add(-1, 1);
            }
            Ok(w)
        }
        CertificateTree::Split {
            pivot,
            link,
            deletion,
            ..
        } => {
            let mut w = predicted_wedge(&c.deletion(pivot)?, deletion)?;
            let lw = predicted_wedge(&c.link(pivot)?, link)?;
            for (k, m) in lw.multiplicity {
                w.add(k + 1, m);
            }
            Ok(w)
        }
    }
}

/// Result of checking that a grape's Alexander dual is a grape of the same
/// variant (and, for strong grapes, of the predicted class).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualInvarianceReport {
    pub variant: GrapeVariant,
    pub ground_size: usize,
    pub dual_verdict: VerdictKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primal_class: Option<ShClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_class: Option<ShClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_dual_class: Option<ShClass>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Requires `check_grape(c, variant) = Yes`.
pub fn verify_dual_invariance(
    c: &Complex,
    variant: GrapeVariant,
    opts: GrapeOptions,
) -> Result<DualInvarianceReport> {
    let primal = check_grape(c, variant, opts);
    let Some(cert) = primal.certificate() else {
        return Err(Error::Contract(format!(
            "complex is not a {variant} grape (verdict {})",
            primal.label()
        )));
    };
    let dual = c.alexander_dual();
    let dual_verdict = check_grape(&dual, variant, opts);
    let mut report = DualInvarianceReport {
        variant,
        ground_size: c.ground_len(),
        dual_verdict: dual_verdict.kind(),
        primal_class: None,
        dual_class: None,
        expected_dual_class: None,
        status: Status::Pass,
        note: None,
    };
    match &dual_verdict {
        GrapeVerdict::Yes(dual_cert) => {
            if variant == GrapeVariant::StrongCombinatorial {
                let pc = classify_strong(c, cert)?;
                let dc = classify_strong(&dual, dual_cert)?;
                let expected = pc.dual(c.ground_len());
                report.primal_class = Some(pc);
                report.dual_class = Some(dc);
                report.expected_dual_class = expected;
                match expected {
                    Some(e) if e != dc => report.status = Status::Fail,
                    Some(_) => {}
                    None => {
                        report.note = Some("class relation needs a nonempty ground set".into())
                    }
                }
            }
        }
        GrapeVerdict::No => report.status = Status::Fail,
        GrapeVerdict::Unknown(reason) => {
            report.status = if variant.is_weak() {
                Status::Unknown
            } else {
                Status::Fail
            };
            report.note = Some(reason.clone());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
