use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::face::{Face, GroundSet};
use crate::homology::{matches_sphere, reduced_homology};

fn cx(ground: &[&str], facets: &[&[&str]]) -> Complex {
    Complex::new(
        GroundSet::new(ground.iter().copied()).unwrap(),
        facets.iter().copied(),
    )
    .unwrap()
}

fn from_masks(n: usize, masks: &[u64]) -> Complex {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let ground = GroundSet::new(names).unwrap();
    Complex::from_parts(
        std::sync::Arc::new(ground),
        Face::full(n),
        masks.iter().map(|&m| Face::from_bits(m & ((1u64 << n) - 1))),
    )
}

fn c5() -> Complex {
    cx(
        &["a", "b", "c", "d", "e"],
        &[&["a", "b"], &["b", "c"], &["c", "d"], &["d", "e"], &["a", "e"]],
    )
}

fn exhaustive() -> GrapeOptions {
    GrapeOptions {
        exhaustive_gamma: true,
        ..GrapeOptions::default()
    }
}

fn yes(c: &Complex, v: GrapeVariant) -> CertificateTree {
    match check_grape(c, v, GrapeOptions::default()) {
        GrapeVerdict::Yes(cert) => {
            verify_certificate(c, v, &cert).unwrap();
            cert
        }
        other => panic!("expected a {v} grape, got {other:?}"),
    }
}

/// Straight transcription of the recursive definition over face sets, with
/// no memo, no ground restriction and no bitmask tricks.
mod oracle {
    use super::*;

    pub type Faces = BTreeSet<BTreeSet<usize>>;

    pub fn faces(c: &Complex) -> Faces {
        c.faces().into_iter().map(|f| f.iter().collect()).collect()
    }

    fn vertices(k: &Faces) -> BTreeSet<usize> {
        k.iter().flatten().copied().collect()
    }

    fn link(k: &Faces, a: usize) -> Faces {
        k.iter()
            .filter(|f| f.contains(&a))
            .map(|f| f.iter().copied().filter(|&x| x != a).collect())
            .collect()
    }

    fn deletion(k: &Faces, a: usize) -> Faces {
        k.iter().filter(|f| !f.contains(&a)).cloned().collect()
    }

    fn is_cone(k: &Faces) -> bool {
        vertices(k).into_iter().any(|x| {
            k.iter().all(|f| {
                let mut g = f.clone();
                g.insert(x);
                k.contains(&g)
            })
        })
    }

    fn cone_between(lk: &Faces, dl: &Faces) -> bool {
        vertices(dl).into_iter().any(|x| {
            lk.iter().all(|f| {
                let mut g = f.clone();
                g.insert(x);
                dl.contains(&g)
            })
        })
    }

    pub fn is_grape(k: &Faces, strong: bool) -> bool {
        let vs = vertices(k);
        if vs.len() <= 1 {
            return true;
        }
        vs.into_iter().any(|a| {
            let (lk, dl) = (link(k, a), deletion(k, a));
            let glue = if strong {
                is_cone(&lk) || is_cone(&dl)
            } else {
                cone_between(&lk, &dl)
            };
            glue && is_grape(&lk, strong) && is_grape(&dl, strong)
        })
    }
}

#[test]
fn five_cycle_is_weak_but_not_combinatorial() {
    let c = c5();
    assert_eq!(
        check_grape(&c, GrapeVariant::Combinatorial, GrapeOptions::default()),
        GrapeVerdict::No
    );
    let cert = yes(&c, GrapeVariant::WeakCombinatorial);
    let CertificateTree::Split { pivot, witness, .. } = &cert else {
        panic!("expected a split");
    };
    assert_eq!(pivot, "a");
    let VariantWitness::Weak { source, gamma, .. } = witness else {
        panic!("expected a weak witness");
    };
    assert_eq!(*source, GammaSource::Deletion);
    assert_eq!(
        gamma.facets,
        vec![vec!["b", "c"], vec!["c", "d"], vec!["d", "e"]]
    );
    let w = predicted_wedge(&c, &cert).unwrap();
    assert_eq!(w.multiplicity, BTreeMap::from([(1, 1)]));
    assert_eq!(reduced_homology(&c).betti(1), 1);
}

#[test]
fn five_cycle_under_exhaustive_gamma() {
    let c = c5();
    assert!(check_grape(&c, GrapeVariant::WeakCombinatorial, exhaustive()).is_yes());
    assert_eq!(
        check_grape(&c, GrapeVariant::StrongCombinatorial, exhaustive()),
        GrapeVerdict::No
    );
}

#[test]
fn independence_complex_of_p3_is_strong() {
    let c = cx(&["a", "b", "c"], &[&["a", "c"], &["b"]]);
    let cert = yes(&c, GrapeVariant::StrongCombinatorial);
    assert_eq!(
        classify_strong(&c, &cert).unwrap(),
        ShClass::CrossPolytopeBoundary(1)
    );
    assert_eq!(
        predicted_wedge(&c, &cert).unwrap().multiplicity,
        BTreeMap::from([(0, 1)])
    );
}

#[test]
fn classification_examples() {
    let irr = cx(&["a"], &[&[]]);
    let cert = yes(&irr, GrapeVariant::StrongCombinatorial);
    assert_eq!(cert, CertificateTree::Base { base: BaseKind::Irrelevant });
    assert_eq!(
        classify_strong(&irr, &cert).unwrap(),
        ShClass::CrossPolytopeBoundary(0)
    );

    let two = cx(&["a", "b"], &[&["a"], &["b"]]);
    let cert = yes(&two, GrapeVariant::StrongCombinatorial);
    assert_eq!(
        classify_strong(&two, &cert).unwrap(),
        ShClass::CrossPolytopeBoundary(1)
    );

    let p4 = cx(
        &["a", "b", "c", "d"],
        &[&["a", "c"], &["a", "d"], &["b", "d"]],
    );
    let cert = yes(&p4, GrapeVariant::StrongCombinatorial);
    assert_eq!(classify_strong(&p4, &cert).unwrap(), ShClass::Void);
    assert!(reduced_homology(&p4).is_trivial());

    let triangle = cx(&["a", "b", "c"], &[&["a", "b"], &["b", "c"], &["a", "c"]]);
    let cert = yes(&triangle, GrapeVariant::StrongCombinatorial);
    assert_eq!(
        classify_strong(&triangle, &cert).unwrap(),
        ShClass::CrossPolytopeBoundary(2)
    );
}

#[test]
fn dual_invariance_examples() {
    let two = cx(&["a", "b"], &[&["a"], &["b"]]);
    let r = verify_dual_invariance(&two, GrapeVariant::StrongCombinatorial, GrapeOptions::default())
        .unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.dual_class, Some(ShClass::CrossPolytopeBoundary(0)));

    let void = Complex::void(GroundSet::new(["a", "b", "c"]).unwrap());
    let r = verify_dual_invariance(&void, GrapeVariant::StrongCombinatorial, GrapeOptions::default())
        .unwrap();
    assert_eq!((r.primal_class, r.dual_class), (Some(ShClass::Void), Some(ShClass::Void)));
    assert_eq!(r.status, Status::Pass);

    let irr = Complex::irrelevant(GroundSet::new(["a", "b", "c"]).unwrap());
    let r = verify_dual_invariance(&irr, GrapeVariant::StrongCombinatorial, GrapeOptions::default())
        .unwrap();
    assert_eq!(r.dual_class, Some(ShClass::CrossPolytopeBoundary(2)));
    assert_eq!(r.expected_dual_class, Some(ShClass::CrossPolytopeBoundary(2)));
    assert_eq!(r.status, Status::Pass);
}

#[test]
fn dual_invariance_requires_a_grape() {
    assert!(
        verify_dual_invariance(&c5(), GrapeVariant::Combinatorial, GrapeOptions::default())
            .is_err()
    );
}

#[test]
fn certificate_json_round_trip() {
    let c = c5();
    let cert = yes(&c, GrapeVariant::WeakCombinatorial);
    let json = serde_json::to_string(&cert).unwrap();
    let back: CertificateTree = serde_json::from_str(&json).unwrap();
    assert_eq!(back, cert);
    let leaf: CertificateTree = serde_json::from_str(r#"{"base":"point"}"#).unwrap();
    assert_eq!(leaf, CertificateTree::Base { base: BaseKind::Point });

    let strong = cx(&["a", "b", "c"], &[&["a", "c"], &["b"]]);
    let cert = yes(&strong, GrapeVariant::StrongCombinatorial);
    let v = serde_json::to_value(&cert).unwrap();
    assert_eq!(v["witness"]["kind"], "strong");
    assert!(v["pivot"].is_string());
}

#[test]
fn tampered_certificates_are_rejected() {
    let c = cx(&["a", "b", "c"], &[&["a", "c"], &["b"]]);
    let cert = yes(&c, GrapeVariant::StrongCombinatorial);
    // wrong variant
    assert!(verify_certificate(&c, GrapeVariant::Combinatorial, &cert).is_err());
    // wrong base
    let bogus = CertificateTree::Base { base: BaseKind::Point };
    assert!(verify_certificate(&c, GrapeVariant::StrongCombinatorial, &bogus).is_err());
    // a cone witness that does not hold
    let five = c5();
    let lie = CertificateTree::Split {
        pivot: "a".into(),
        witness: VariantWitness::Combinatorial { apex: "c".into() },
        link: Box::new(CertificateTree::Base { base: BaseKind::Point }),
        deletion: Box::new(CertificateTree::Base { base: BaseKind::Point }),
    };
    assert!(verify_certificate(&five, GrapeVariant::Combinatorial, &lie).is_err());
}

#[test]
fn branch_choice_does_not_change_the_class() {
    // the edge {a, b}: both link and deletion at a are cones
    let edge = cx(&["a", "b"], &[&["a", "b"]]);
    let cert = yes(&edge, GrapeVariant::StrongCombinatorial);
    for tie in [TieBreak::PreferDeletion, TieBreak::PreferLink] {
        assert_eq!(classify_strong_with(&edge, &cert, tie).unwrap(), ShClass::Void);
    }
}

#[test]
fn cones_and_simplex_boundaries_are_strong() {
    for n in 1..=8 {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let simplex = Complex::simplex(GroundSet::new(names.clone()).unwrap());
        let cert = yes(&simplex, GrapeVariant::StrongCombinatorial);
        assert_eq!(classify_strong(&simplex, &cert).unwrap(), ShClass::Void);
        let boundary = Complex::simplex_boundary(GroundSet::new(names).unwrap());
        let cert = yes(&boundary, GrapeVariant::StrongCombinatorial);
        let class = classify_strong(&boundary, &cert).unwrap();
        assert_eq!(class, ShClass::CrossPolytopeBoundary(n - 1));
        assert!(matches_sphere(&boundary, class));
    }
}

#[test]
fn disjoint_union_of_combinatorial_grapes() {
    let union = cx(
        &["a", "b", "c", "d", "e", "f", "g", "h"],
        &[
            &["a", "b"],
            &["b", "c"],
            &["a", "c"],
            &["d", "e", "f"],
            &["g", "h"],
        ],
    );
    yes(&union, GrapeVariant::Combinatorial);
}

#[test]
fn variant_names_parse() {
    for v in GrapeVariant::ALL {
        assert_eq!(v.as_str().parse::<GrapeVariant>().unwrap(), v);
        assert_eq!(serde_json::to_value(v).unwrap(), v.as_str());
    }
    assert!("bogus".parse::<GrapeVariant>().is_err());
}

#[test]
fn class_serialization() {
    assert_eq!(
        serde_json::to_string(&ShClass::CrossPolytopeBoundary(2)).unwrap(),
        r#"{"class":"cross_polytope_boundary","n":2}"#
    );
    assert_eq!(serde_json::to_string(&ShClass::Void).unwrap(), r#"{"class":"void"}"#);
}

fn small_complex() -> impl Strategy<Value = Complex> {
    (0usize..=5).prop_flat_map(|n| {
        prop::collection::vec(0u64..(1u64 << n), 0..5).prop_map(move |m| from_masks(n, &m))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn strong_and_combinatorial_match_the_definition(c in small_complex()) {
        let faces = oracle::faces(&c);
        let strong = check_grape(&c, GrapeVariant::StrongCombinatorial, GrapeOptions::default());
        prop_assert_eq!(strong.is_yes(), oracle::is_grape(&faces, true));
        let comb = check_grape(&c, GrapeVariant::Combinatorial, GrapeOptions::default());
        prop_assert_eq!(comb.is_yes(), oracle::is_grape(&faces, false));
        prop_assert!(!matches!(comb, GrapeVerdict::Unknown(_)));
    }

    #[test]
    fn hierarchy_and_certificates(c in small_complex()) {
        let opts = exhaustive();
        let verdicts: Vec<_> = GrapeVariant::ALL
            .iter()
            .map(|&v| (v, check_grape(&c, v, opts)))
            .collect();
        for (v, verdict) in &verdicts {
            if let GrapeVerdict::Yes(cert) = verdict {
                prop_assert!(verify_certificate(&c, *v, cert).is_ok());
                prop_assert!(cert.depth() <= c.vertices().len());
            }
        }
        let get = |v| &verdicts.iter().find(|(w, _)| *w == v).unwrap().1;
        let no = |v| matches!(get(v), GrapeVerdict::No);
        if get(GrapeVariant::StrongCombinatorial).is_yes() {
            prop_assert!(get(GrapeVariant::Combinatorial).is_yes());
            prop_assert!(!no(GrapeVariant::StrongWeakCombinatorial));
        }
        if get(GrapeVariant::Combinatorial).is_yes() {
            prop_assert!(!no(GrapeVariant::WeakCombinatorial));
        }
        if get(GrapeVariant::StrongWeakCombinatorial).is_yes() {
            prop_assert!(!no(GrapeVariant::WeakCombinatorial));
        }
    }

    #[test]
    fn strong_class_matches_homology(c in small_complex()) {
        if let GrapeVerdict::Yes(cert) =
            check_grape(&c, GrapeVariant::StrongCombinatorial, GrapeOptions::default())
        {
            let a = classify_strong_with(&c, &cert, TieBreak::PreferDeletion).unwrap();
            let b = classify_strong_with(&c, &cert, TieBreak::PreferLink).unwrap();
            prop_assert_eq!(a, b);
            prop_assert!(matches_sphere(&c, a));
            let w = predicted_wedge(&c, &cert).unwrap();
            let h = reduced_homology(&c);
            for k in -1..=5 {
                prop_assert_eq!(w.betti(k), h.betti(k));
            }
        }
    }

    #[test]
    fn weak_verdicts_never_say_no_without_enumeration(c in small_complex()) {
        for v in [GrapeVariant::WeakCombinatorial, GrapeVariant::StrongWeakCombinatorial] {
            let verdict = check_grape(&c, v, GrapeOptions::default());
            prop_assert!(!matches!(verdict, GrapeVerdict::No));
        }
    }
}
