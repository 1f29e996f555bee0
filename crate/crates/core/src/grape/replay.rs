//! Independent replay of certificate trees.

use super::{check_base, CertificateTree, ConeSide, GrapeVariant, Side, VariantWitness};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::homotopy::{replay, CollapseSequence, CollapseSequenceJson};

/// Checks every node of `cert` against `c`: pivots are vertices, witnesses
/// satisfy the variant's condition, collapse sequences replay to void, and
/// leaves have at most one vertex.
pub fn verify_certificate(c: &Complex, variant: GrapeVariant, cert: &CertificateTree) -> Result<()> {
    match cert {
        CertificateTree::Base { base } => check_base(c, *base),
        CertificateTree::Split {
            pivot,
            witness,
            link,
            deletion,
        } => {
            let a = c.index(pivot)?;
            if !c.vertices().contains(a) {
                return Err(fail(format!("pivot `{pivot}` is not a vertex")));
            }
            let lk = c.link_at(a)?;
            let dl = c.deletion_at(a)?;
            check_witness(&lk, &dl, variant, witness)
                .map_err(|e| fail(format!("at pivot `{pivot}`: {e}")))?;
            verify_certificate(&lk, variant, link)?;
            verify_certificate(&dl, variant, deletion)
        }
    }
}

fn fail(msg: String) -> Error {
    Error::Contract(msg)
}

fn check_witness(
    lk: &Complex,
    dl: &Complex,
    variant: GrapeVariant,
    witness: &VariantWitness,
) -> Result<()> {
    match (variant, witness) {
        (
            GrapeVariant::StrongCombinatorial,
            VariantWitness::Strong {
                side,
                link_apex,
                deletion_apex,
            },
        ) => {
            let check = |k: &Complex, apex: &Option<String>, what: &str| -> Result<()> {
                let apex = apex
                    .as_deref()
                    .ok_or_else(|| fail(format!("{what} apex missing")))?;
                if !k.cone_apexes().contains(k.index(apex)?) {
                    return Err(fail(format!("{what} is not a cone with apex `{apex}`")));
                }
                Ok(())
            };
            if matches!(side, ConeSide::Link | ConeSide::Both) {
                check(lk, link_apex, "link")?;
            }
            if matches!(side, ConeSide::Deletion | ConeSide::Both) {
                check(dl, deletion_apex, "deletion")?;
            }
            Ok(())
        }
        (GrapeVariant::Combinatorial, VariantWitness::Combinatorial { apex }) => {
            let x = dl.index(apex)?;
            if lk.facets().iter().all(|f| dl.contains_face(f.with(x))) {
                Ok(())
            } else {
                Err(fail(format!("cone over the link with apex `{apex}` leaves the deletion")))
            }
        }
        (GrapeVariant::WeakCombinatorial, VariantWitness::Weak { gamma, collapse, .. }) => {
            let gamma = Complex::from_json(gamma)?;
            if !lk.faces_within(&gamma) {
                return Err(fail("Γ does not contain the link".into()));
            }
            if !gamma.faces_within(dl) {
                return Err(fail("Γ is not inside the deletion".into()));
            }
            collapses_to_void(&gamma, collapse)
        }
        (GrapeVariant::StrongWeakCombinatorial, VariantWitness::StrongWeak { side, collapse }) => {
            let k = match side {
                Side::Link => lk,
                Side::Deletion => dl,
            };
            collapses_to_void(k, collapse)
        }
        (v, _) => Err(fail(format!("witness kind does not match variant {v}"))),
    }
}

fn collapses_to_void(k: &Complex, json: &CollapseSequenceJson) -> Result<()> {
    let seq = CollapseSequence::from_json(json, k)?;
    if replay(k, &seq)?.is_void() {
        Ok(())
    } else {
        Err(fail("collapse sequence does not reach the void complex".into()))
    }
}
