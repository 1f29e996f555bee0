//! Per-instance checks of the forest and path-complex classifications.

use serde_json::{json, Value};

use super::VerificationReport;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::grape::{
    check_grape, classify_strong, verify_certificate, GrapeOptions, GrapeVariant, GrapeVerdict,
    ShClass,
};
use crate::graph::{Digraph, Graph};
use crate::homology::matches_sphere;
use crate::report::Status;

/// Predicted simple-homotopy class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    /// `∂β_n`; a negative `n` can never be matched.
    Sphere(i64),
    /// Void, or `∂β_n` together with the side condition `i(G) = γ(G)`.
    VoidOrSphere(i64),
    Exact(ShClass),
}

impl Expect {
    fn describe(self) -> String {
        match self {
            Expect::Sphere(n) => format!("∂β{n}"),
            Expect::VoidOrSphere(n) => format!("void or ∂β{n}"),
            Expect::Exact(c) => c.to_string(),
        }
    }

    fn admits(self, class: ShClass, side_condition: bool) -> bool {
        let sphere = |n: i64| class == ShClass::CrossPolytopeBoundary(n.max(0) as usize) && n >= 0;
        match self {
            Expect::Sphere(n) => sphere(n),
            Expect::VoidOrSphere(n) => class == ShClass::Void || (sphere(n) && side_condition),
            Expect::Exact(c) => class == c,
        }
    }
}

/// Strong recognition, certificate replay, and classification in one step.
pub fn strong_class(c: &Complex) -> std::result::Result<ShClass, String> {
    match check_grape(c, GrapeVariant::StrongCombinatorial, GrapeOptions::default()) {
        GrapeVerdict::Yes(cert) => {
            verify_certificate(c, GrapeVariant::StrongCombinatorial, &cert)
                .map_err(|e| format!("certificate does not replay: {e}"))?;
            classify_strong(c, &cert).map_err(|e| e.to_string())
        }
        GrapeVerdict::No => Err("not a strong combinatorial grape".into()),
        GrapeVerdict::Unknown(r) => Err(format!("undecided: {r}")),
    }
}

fn class_report(
    theorem: String,
    instance: &Value,
    c: &Complex,
    expect: Expect,
    side_condition: bool,
    extra: Value,
) -> VerificationReport {
    let (observed, status, homology) = match strong_class(c) {
        Ok(class) => {
            let homology = matches_sphere(c, class);
            let ok = expect.admits(class, side_condition) && homology;
            (class.to_string(), if ok { Status::Pass } else { Status::Fail }, Some(homology))
        }
        Err(msg) => (msg, Status::Fail, None),
    };
    VerificationReport::new(theorem, instance.clone(), expect.describe(), observed, status)
        .with_attachments(json!({
            "complex": c.to_json(),
            "homology_matches": homology,
            "context": extra,
        }))
}

/// The eight forest classifications: `Ind`, `Dom`, `EC`, `ED` and their
/// Alexander duals, each recognized as a strong grape, classified, compared
/// with its formula, and cross-checked against homology.
pub fn verify_forest_theorem(g: &Graph) -> Result<Vec<VerificationReport>> {
    if !g.is_forest() {
        return Err(Error::Input("graph is not a forest".into()));
    }
    let inv = g.invariants()?;
    let (v, e) = (g.vertex_count() as i64, g.edge_count() as i64);
    let (i, a0) = (inv.i_dom as i64, inv.alpha0 as i64);
    let side = inv.i_dom == inv.gamma;
    let instance = serde_json::to_value(g.to_json()).expect("graph serializes");
    let context = json!({ "invariants": inv });

    let ind = g.independence_complex()?;
    let dom = g.dominance_complex()?;
    let ec = g.edge_cover_complex()?;
    let ed = g.edge_dominance_complex()?;
    let primal = [
        ("Ind", &ind, Expect::VoidOrSphere(i), side),
        ("Dom", &dom, Expect::Sphere(a0), true),
        ("EC", &ec, Expect::VoidOrSphere(e - v + i), side),
        ("ED", &ed, Expect::Sphere(e - a0), true),
    ];
    let dual_expect = [
        Expect::VoidOrSphere(v - i - 1),
        Expect::Sphere(v - a0 - 1),
        Expect::VoidOrSphere(v - i - 1),
        Expect::Sphere(a0 - 1),
    ];
    let mut reports = Vec::new();
    for (name, c, expect, side) in primal {
        reports.push(class_report(format!("forest:{name}"), &instance, c, expect, side, context.clone()));
    }
    for ((name, c, _, side), expect) in primal.into_iter().zip(dual_expect) {
        let dual = c.alexander_dual();
        let (expect, ctx) = if c.ground_len() == 0 {
            // on an empty ground the dual swaps void and irrelevant and the
            // dimension formula does not apply
            let swapped = if c.is_void() {
                ShClass::CrossPolytopeBoundary(0)
            } else {
                ShClass::Void
            };
            let mut ctx = context.clone();
            ctx["note"] = "empty ground: dual formula not applicable".into();
            (Expect::Exact(swapped), ctx)
        } else {
            (expect, context.clone())
        };
        reports.push(class_report(format!("forest:{name}*"), &instance, &dual, expect, side, ctx));
    }
    Ok(reports)
}

/// Path-free and path-missing classifications, plus `PM = PF*`.
pub fn verify_pfpm_theorem(d: &Digraph) -> Result<Vec<VerificationReport>> {
    let instance = serde_json::to_value(d.to_json()).expect("digraph serializes");
    let pf = d.path_free_complex()?;
    let pm = d.path_missing_complex()?;
    let mut reports = Vec::new();
    let dual_ok = pm == pf.alexander_dual();
    reports.push(VerificationReport::new(
        "pfpm:PM=PF*",
        instance.clone(),
        true,
        dual_ok,
        if dual_ok { Status::Pass } else { Status::Fail },
    ));
    if d.arc_count() == 0 {
        let s_is_t = d.source() == d.sink();
        let (pf_exp, pm_exp) = if s_is_t {
            ("void", "irrelevant")
        } else {
            ("irrelevant", "void")
        };
        let kind = |c: &Complex| {
            if c.is_void() {
                "void"
            } else if c.is_irrelevant() {
                "irrelevant"
            } else {
                "other"
            }
        };
        let observed = json!({ "PF": kind(&pf), "PM": kind(&pm) });
        let ok = kind(&pf) == pf_exp && kind(&pm) == pm_exp;
        reports.push(VerificationReport::new(
            "pfpm:empty",
            instance,
            json!({ "PF": pf_exp, "PM": pm_exp }),
            observed,
            if ok { Status::Pass } else { Status::Fail },
        ));
        return Ok(reports);
    }
    let useless = d.useless_arcs();
    let cycle = d.has_cycle();
    let vprime = d.nonsinks().len() as i64;
    let e = d.arc_count() as i64;
    let void_case = !useless.is_empty() || cycle;
    let context = json!({ "useless": useless, "cycle": cycle, "nonsinks": vprime });
    let (pf_exp, pm_exp) = if void_case {
        (Expect::Exact(ShClass::Void), Expect::Exact(ShClass::Void))
    } else {
        (Expect::Sphere(vprime - 1), Expect::Sphere(e - vprime))
    };
    reports.push(class_report("pfpm:PF".into(), &instance, &pf, pf_exp, true, context.clone()));
    reports.push(class_report("pfpm:PM".into(), &instance, &pm, pm_exp, true, context));
    Ok(reports)
}

/// Deletion and contraction identities for `PF`, and the useless-arc
/// implication after deleting a lone arc out of `s`.
pub fn verify_gkl_lemma(d: &Digraph) -> Result<Vec<VerificationReport>> {
    let instance = serde_json::to_value(d.to_json()).expect("digraph serializes");
    let pf = d.path_free_complex()?;
    let useless = d.useless_arcs();
    let mut reports = Vec::new();
    let mut push = |theorem: &str, arc: &str, ok: bool| {
        reports.push(
            VerificationReport::new(
                theorem,
                instance.clone(),
                true,
                ok,
                if ok { Status::Pass } else { Status::Fail },
            )
            .with_attachments(json!({ "arc": arc })),
        );
    };
    for a in d.arcs() {
        let deleted = d.delete_arc(&a.id)?;
        push(
            "gkl:deletion",
            &a.id,
            pf.deletion(&a.id)? == deleted.path_free_complex()?,
        );
        if d.vertex_names()[a.src] != d.source() {
            continue;
        }
        push(
            "gkl:contraction",
            &a.id,
            pf.link(&a.id)? == d.contract_arc(&a.id)?.path_free_complex()?,
        );
        let lone_target = d.arcs().iter().filter(|b| b.tgt == a.tgt).count() == 1;
        if !useless.contains(&a.id) && d.arc_count() > 1 && lone_target {
            push("gkl:useless-after-deletion", &a.id, !deleted.useless_arcs().is_empty());
        }
    }
    Ok(reports)
}
