//! Recognition by backtracking over pivots, memoized on the facet list.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{
    BaseKind, CertificateTree, ConeSide, GammaSource, GrapeOptions, GrapeVariant, GrapeVerdict,
    Side, VariantWitness,
};
use crate::complex::Complex;
use crate::face::Face;
use crate::homotopy::{collapse_search, cone_collapse, CollapseSequence, SearchMode, ShvVerdict};

/// Largest ground set on which every `Γ` between link and deletion is tried.
pub const EXHAUSTIVE_GAMMA_MAX_GROUND: usize = 6;

/// Cap on the number of intermediate complexes enumerated at one pivot.
const GAMMA_ENUMERATION_CAP: usize = 250_000;

/// Decides whether `c` is a grape of the given variant.
///
/// Strong and plain combinatorial grapes are decided exactly. The weak
/// variants answer `Yes` with a certificate whenever their witness search
/// succeeds; `No` is reported only when it is proven (see [`GrapeOptions`]).
pub fn check_grape(c: &Complex, variant: GrapeVariant, opts: GrapeOptions) -> GrapeVerdict {
    let mut searcher = Searcher {
        variant,
        opts,
        mode: if opts.exhaustive_gamma {
            SearchMode::Exhaustive
        } else {
            SearchMode::Greedy
        },
        memo: HashMap::new(),
    };
    match searcher.search(c) {
        Node::Yes(cert) => GrapeVerdict::Yes(Arc::unwrap_or_clone(cert)),
        Node::No => GrapeVerdict::No,
        Node::Unknown(reason) => GrapeVerdict::Unknown(reason),
    }
}

#[derive(Clone)]
enum Node {
    Yes(Arc<CertificateTree>),
    No,
    Unknown(String),
}

enum Witness {
    Found(VariantWitness),
    Absent,
    Undecided(String),
}

struct Searcher {
    variant: GrapeVariant,
    opts: GrapeOptions,
    mode: SearchMode,
    memo: HashMap<Vec<Face>, Node>,
}

impl Searcher {
    fn search(&mut self, c: &Complex) -> Node {
        let c = c.restrict_ground();
        if let Some(node) = self.memo.get(c.facets()) {
            return node.clone();
        }
        let node = self.solve(&c);
        self.memo.insert(c.facets().to_vec(), node.clone());
        node
    }

    fn solve(&mut self, c: &Complex) -> Node {
        if let Some(base) = BaseKind::of(c) {
            return Node::Yes(Arc::new(CertificateTree::Base { base }));
        }
        let mut unknown = None;
        for a in c.ground_face().iter() {
            match self.pivot(c, a) {
                Node::Yes(cert) => return Node::Yes(cert),
                Node::No => {}
                Node::Unknown(reason) => {
                    unknown.get_or_insert(reason);
                }
            }
        }
        unknown.map_or(Node::No, Node::Unknown)
    }

    fn pivot(&mut self, c: &Complex, a: usize) -> Node {
        let lk = c.link_at(a).expect("pivot in ground");
        let dl = c.deletion_at(a).expect("pivot in ground");
        let mut witness = self.witness(&lk, &dl);
        if let Witness::Absent = witness {
            return Node::No;
        }
        let lk_node = self.search(&lk);
        if let Node::No = lk_node {
            return Node::No;
        }
        let dl_node = self.search(&dl);
        if let Node::No = dl_node {
            return Node::No;
        }
        if let Witness::Undecided(_) = witness {
            if let Some(w) = self.enumerated_gamma(c, &lk, &dl) {
                witness = w;
            }
        }
        match (witness, lk_node, dl_node) {
            (Witness::Found(w), Node::Yes(l), Node::Yes(d)) => {
                Node::Yes(Arc::new(CertificateTree::Split {
                    pivot: c.universe().name(a).to_owned(),
                    witness: w,
                    link: Box::new((*l).clone()),
                    deletion: Box::new((*d).clone()),
                }))
            }
            (Witness::Absent, _, _) => Node::No,
            (Witness::Undecided(r), _, _) => Node::Unknown(r),
            (_, Node::Unknown(r), _) | (_, _, Node::Unknown(r)) => Node::Unknown(r),
            _ => unreachable!("No children handled above"),
        }
    }

    fn witness(&self, lk: &Complex, dl: &Complex) -> Witness {
        match self.variant {
            GrapeVariant::StrongCombinatorial => strong_witness(lk, dl),
            GrapeVariant::Combinatorial => match cone_between(lk, dl) {
                Some(x) => Witness::Found(VariantWitness::Combinatorial {
                    apex: lk.universe().name(x).to_owned(),
                }),
                None => Witness::Absent,
            },
            GrapeVariant::WeakCombinatorial => self.weak_witness(lk, dl),
            GrapeVariant::StrongWeakCombinatorial => self.strong_weak_witness(lk, dl),
        }
    }

    fn collapse(&self, c: &Complex) -> ShvVerdict {
        collapse_search(c, self.opts.budget, self.mode).verdict
    }

    fn weak_witness(&self, lk: &Complex, dl: &Complex) -> Witness {
        for (source, gamma) in [(GammaSource::Link, lk), (GammaSource::Deletion, dl)] {
            if let ShvVerdict::Yes(seq) = self.collapse(gamma) {
                return Witness::Found(weak(source, gamma, &seq));
            }
        }
        if let Some(x) = cone_between(lk, dl) {
            let gamma = Complex::from_parts(
                lk.universe().clone(),
                dl.ground_face(),
                lk.facets().iter().map(|f| f.with(x)),
            );
            let seq = cone_collapse(&gamma, x).expect("x is an apex");
            return Witness::Found(weak(GammaSource::Cone, &gamma, &seq));
        }
        Witness::Undecided("no collapsible Γ among link, deletion and cones between them".into())
    }

    fn strong_weak_witness(&self, lk: &Complex, dl: &Complex) -> Witness {
        let mut refuted = 0;
        for (side, k) in [(Side::Link, lk), (Side::Deletion, dl)] {
            match self.collapse(k) {
                ShvVerdict::Yes(seq) => {
                    return Witness::Found(VariantWitness::StrongWeak {
                        side,
                        collapse: seq.to_json(k),
                    })
                }
                // only exhaustive searches report No
                ShvVerdict::No => refuted += 1,
                ShvVerdict::Unknown => {}
            }
        }
        if refuted == 2 {
            Witness::Absent
        } else {
            Witness::Undecided("collapsibility of link and deletion undecided".into())
        }
    }

    /// Family (iv): every subcomplex between link and deletion.
    ///
    /// Returns `None` when enumeration is not enabled for this pivot.
    fn enumerated_gamma(&self, c: &Complex, lk: &Complex, dl: &Complex) -> Option<Witness> {
        if self.variant != GrapeVariant::WeakCombinatorial
            || !self.opts.exhaustive_gamma
            || c.ground_len() > EXHAUSTIVE_GAMMA_MAX_GROUND
        {
            return None;
        }
        let extra: Vec<Face> = dl
            .faces()
            .into_iter()
            .filter(|f| !lk.contains_face(*f))
            .collect();
        let mut e = Enumeration {
            searcher: self,
            lk,
            dl,
            extra: &extra,
            present: lk.faces().into_iter().collect(),
            chosen: Vec::new(),
            visited: 0,
            undecided: false,
            found: None,
        };
        e.walk(0);
        Some(match e.found {
            Some(w) => Witness::Found(w),
            None if e.visited > GAMMA_ENUMERATION_CAP => {
                Witness::Undecided("too many intermediate complexes to enumerate".into())
            }
            None if e.undecided => {
                Witness::Undecided("collapse search budget exhausted on some Γ".into())
            }
            None => Witness::Absent,
        })
    }
}

struct Enumeration<'a> {
    searcher: &'a Searcher,
    lk: &'a Complex,
    dl: &'a Complex,
    extra: &'a [Face],
    present: HashSet<Face>,
    chosen: Vec<Face>,
    visited: usize,
    undecided: bool,
    found: Option<VariantWitness>,
}

impl Enumeration<'_> {
    fn done(&self) -> bool {
        self.found.is_some() || self.visited > GAMMA_ENUMERATION_CAP
    }

    // `extra` is sorted by size, so every boundary face of `extra[i]` has
    // already been decided when `i` is reached.
    fn walk(&mut self, i: usize) {
        if self.done() {
            return;
        }
        if i == self.extra.len() {
            self.visited += 1;
            let gamma = Complex::from_parts(
                self.lk.universe().clone(),
                self.dl.ground_face(),
                self.lk.facets().iter().chain(&self.chosen).copied(),
            );
            match self.searcher.collapse(&gamma) {
                ShvVerdict::Yes(seq) => {
                    self.found = Some(weak(GammaSource::Enumerated, &gamma, &seq))
                }
                ShvVerdict::Unknown => self.undecided = true,
                ShvVerdict::No => {}
            }
            return;
        }
        let f = self.extra[i];
        self.walk(i + 1);
        if f.iter().all(|x| self.present.contains(&f.without(x))) {
            self.present.insert(f);
            self.chosen.push(f);
            self.walk(i + 1);
            self.chosen.pop();
            self.present.remove(&f);
        }
    }
}

fn weak(source: GammaSource, gamma: &Complex, seq: &CollapseSequence) -> VariantWitness {
    VariantWitness::Weak {
        source,
        gamma: gamma.to_json(),
        collapse: seq.to_json(gamma),
    }
}

fn strong_witness(lk: &Complex, dl: &Complex) -> Witness {
    let name = |c: &Complex| {
        c.cone_apexes()
            .first()
            .map(|x| c.universe().name(x).to_owned())
    };
    let (link_apex, deletion_apex) = (name(lk), name(dl));
    let side = match (&link_apex, &deletion_apex) {
        (Some(_), Some(_)) => ConeSide::Both,
        (Some(_), None) => ConeSide::Link,
        (None, Some(_)) => ConeSide::Deletion,
        (None, None) => return Witness::Absent,
    };
    Witness::Found(VariantWitness::Strong {
        side,
        link_apex,
        deletion_apex,
    })
}

/// First `x` in the ground of `dl` with `A_x(lk) ⊆ dl`, where `A_x(lk)` is
/// the cone over `lk` with apex `x`.
pub(super) fn cone_between(lk: &Complex, dl: &Complex) -> Option<usize> {
    dl.ground_face()
        .iter()
        .find(|&x| lk.facets().iter().all(|f| dl.contains_face(f.with(x))))
}
