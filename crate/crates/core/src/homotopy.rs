//! Elementary collapses and collapsibility search.
//!
//! Simple-homotopy triviality is approximated by collapsibility: a search
//! either returns an explicit, replayable sequence of elementary collapses
//! to the void complex, proves that none exists (exhaustive mode only), or
//! gives up when its node budget runs out.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::Face;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// An elementary collapse removing the facet `sigma` and its free face `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CollapsePair {
    pub sigma: Face,
    pub tau: Face,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CollapseSequence {
    pub steps: Vec<CollapsePair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseStepJson {
    pub sigma: Vec<String>,
    pub tau: Vec<String>,
}

/// `{"steps": [{"sigma": [...], "tau": [...]}, ...]}`
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseSequenceJson {
    pub steps: Vec<CollapseStepJson>,
}

impl CollapseSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Names are resolved against the ground table of `c`.
    pub fn to_json(&self, c: &Complex) -> CollapseSequenceJson {
        CollapseSequenceJson {
            steps: self
                .steps
                .iter()
                .map(|p| CollapseStepJson {
                    sigma: c.face_names(p.sigma),
                    tau: c.face_names(p.tau),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &CollapseSequenceJson, c: &Complex) -> Result<Self> {
        let steps = json
            .steps
            .iter()
            .map(|s| {
                Ok(CollapsePair {
                    sigma: c.face(&s.sigma)?,
                    tau: c.face(&s.tau)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CollapseSequence { steps })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShvVerdict {
    Yes(CollapseSequence),
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShvResult {
    pub verdict: ShvVerdict,
    pub budget_spent: u64,
}

impl ShvResult {
    pub fn is_yes(&self) -> bool {
        matches!(self.verdict, ShvVerdict::Yes(_))
    }

    pub fn sequence(&self) -> Option<&CollapseSequence> {
        match &self.verdict {
            ShvVerdict::Yes(seq) => Some(seq),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchMode {
    #[default]
    Greedy,
    Exhaustive,
}

fn is_free(c: &Complex, sigma: Face, tau: Face) -> bool {
    c.facets().contains(&sigma)
        && tau.is_subset(sigma)
        && tau.len() + 1 == sigma.len()
        && c
            .facets()
            .iter()
            .all(|f| *f == sigma || !tau.is_subset(*f))
}

/// All free pairs, ordered by `|σ|` descending, then `σ`, then `τ`
/// lexicographically.
pub fn free_pairs(c: &Complex) -> Vec<CollapsePair> {
    let mut pairs = Vec::new();
    for &sigma in c.facets() {
        for x in sigma.iter() {
            let tau = sigma.without(x);
            if c.facets().iter().all(|f| *f == sigma || !tau.is_subset(*f)) {
                pairs.push(CollapsePair { sigma, tau });
            }
        }
    }
    pairs.sort_by(|a, b| {
        b.sigma
            .len()
            .cmp(&a.sigma.len())
            .then(a.sigma.cmp_lex(b.sigma))
            .then(a.tau.cmp_lex(b.tau))
    });
    pairs
}

/// Removes `σ` and `τ`, returning the re-facetized complex.
pub fn apply_collapse(c: &Complex, p: CollapsePair) -> Result<Complex> {
    if !is_free(c, p.sigma, p.tau) {
        return Err(Error::Contract(format!(
            "{:?} ⊃ {:?} is not a free pair",
            c.face_names(p.sigma),
            c.face_names(p.tau)
        )));
    }
    Ok(collapse_unchecked(c, p))
}

fn collapse_unchecked(c: &Complex, p: CollapsePair) -> Complex {
    let removed = p.sigma.difference(p.tau).first().expect("sigma is nonempty");
    let mut facets: Vec<Face> = c.facets().iter().copied().filter(|f| *f != p.sigma).collect();
    for y in p.sigma.iter().filter(|&y| y != removed) {
        facets.push(p.sigma.without(y));
    }
    Complex::from_parts(c.universe().clone(), c.ground_face(), facets)
}

/// Applies every step in order, checking each is free when applied.
pub fn replay(c: &Complex, seq: &CollapseSequence) -> Result<Complex> {
    seq.steps.iter().enumerate().try_fold(c.clone(), |cur, (i, p)| {
        apply_collapse(&cur, *p).map_err(|e| Error::Contract(format!("step {i}: {e}")))
    })
}

/// Collapses a cone with apex `apex` to the void complex, pairing each face
/// `F ∌ apex` with `F ∪ {apex}` in order of decreasing `|F|`.
pub fn cone_collapse(c: &Complex, apex: usize) -> Result<CollapseSequence> {
    if c.is_void() || !c.cone_apexes().contains(apex) {
        return Err(Error::Contract(format!(
            "`{}` is not an apex",
            c.universe().name(apex)
        )));
    }
    let mut base: Vec<Face> = c
        .faces()
        .into_iter()
        .filter(|f| !f.contains(apex))
        .collect();
    base.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp_lex(*b)));
    let steps = base
        .into_iter()
        .map(|tau| CollapsePair {
            sigma: tau.with(apex),
            tau,
        })
        .collect();
    Ok(CollapseSequence { steps })
}

struct Search {
    budget: u64,
    nodes: u64,
    dead: HashSet<Vec<Face>>,
    path: Vec<CollapsePair>,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search {
    fn dfs(&mut self, c: &Complex) -> Outcome {
        if self.nodes >= self.budget {
            return Outcome::OutOfBudget;
        }
        self.nodes += 1;
        if c.is_void() {
            return Outcome::Found;
        }
        if let Some(apex) = c.cone_apexes().first() {
            let seq = cone_collapse(c, apex).expect("apex checked");
            self.path.extend(seq.steps);
            return Outcome::Found;
        }
        if self.dead.contains(c.facets()) {
            return Outcome::Exhausted;
        }
        for p in free_pairs(c) {
            let next = collapse_unchecked(c, p);
            self.path.push(p);
            match self.dfs(&next) {
                Outcome::Found => return Outcome::Found,
                Outcome::OutOfBudget => return Outcome::OutOfBudget,
                Outcome::Exhausted => {
                    self.path.pop();
                }
            }
        }
        self.dead.insert(c.facets().to_vec());
        Outcome::Exhausted
    }
}

/// Searches for a collapse of `c` to the void complex.
///
/// Depth-first in [`free_pairs`] order with backtracking; states already
/// shown to be dead ends are remembered. A complex with nonzero reduced
/// Euler characteristic cannot collapse to void and is rejected without
/// search. `No` is only reported in exhaustive mode.
pub fn collapse_search(c: &Complex, budget: u64, mode: SearchMode) -> ShvResult {
    if c.reduced_euler_characteristic() != 0 {
        let verdict = match mode {
            SearchMode::Exhaustive => ShvVerdict::No,
            SearchMode::Greedy => ShvVerdict::Unknown,
        };
        return ShvResult {
            verdict,
            budget_spent: 0,
        };
    }
    let mut search = Search {
        budget: budget.max(1),
        nodes: 0,
        dead: HashSet::new(),
        path: Vec::new(),
    };
    let verdict = match search.dfs(c) {
        Outcome::Found => ShvVerdict::Yes(CollapseSequence { steps: search.path }),
        Outcome::Exhausted => match mode {
            SearchMode::Exhaustive => ShvVerdict::No,
            SearchMode::Greedy => ShvVerdict::Unknown,
        },
        Outcome::OutOfBudget => ShvVerdict::Unknown,
    };
    ShvResult {
        verdict,
        budget_spent: search.nodes,
    }
}

/// Lifts a collapse of `lk_a(c)` to void into a collapse of `c` onto `dl_a(c)`.
///
/// Step `(F, F ∖ {x})` becomes `(F ∪ {a}, (F ∖ {x}) ∪ {a})`. The lifted
/// sequence is replayed before it is returned.
pub fn lifted_collapse(c: &Complex, a: &str, lk_seq: &CollapseSequence) -> Result<CollapseSequence> {
    let ai = c.index(a)?;
    let link = c.link_at(ai)?;
    let end = replay(&link, lk_seq)
        .map_err(|e| Error::Contract(format!("sequence does not collapse the link: {e}")))?;
    if !end.is_void() {
        return Err(Error::Contract("sequence does not reach the void complex".into()));
    }
    let lifted = CollapseSequence {
        steps: lk_seq
            .steps
            .iter()
            .map(|p| CollapsePair {
                sigma: p.sigma.with(ai),
                tau: p.tau.with(ai),
            })
            .collect(),
    };
    let result = replay(c, &lifted)?;
    let target = c.deletion_at(ai)?;
    if result.facets() != target.facets() {
        return Err(Error::Contract("lifted sequence does not end at the deletion".into()));
    }
    Ok(lifted)
}

/// Turns a collapse of `k` into a collapse of `susp_{x,y}(k)`.
///
/// The cone with apex `x` is collapsed onto the cone with apex `y`, that cone
/// onto `k`, and `k` to void. Returns the suspension and its result.
pub fn suspension_transport(
    k: &Complex,
    s: &ShvResult,
    x: &str,
    y: &str,
) -> Result<(Complex, ShvResult)> {
    let seq = s
        .sequence()
        .ok_or_else(|| Error::Contract("suspension transport needs a Yes verdict".into()))?;
    let susp = k.suspension(x, y)?;
    let k_in = susp
        .reindexed_onto(k)
        .ok_or_else(|| Error::Contract("ground mismatch".into()))?;
    let k_seq = CollapseSequence {
        steps: seq
            .steps
            .iter()
            .map(|p| reindex_pair(k, &k_in, *p))
            .collect(),
    };
    let first = lifted_collapse(&susp, x, &k_seq)?;
    let cone_y = susp.deletion(x)?;
    let second = lifted_collapse(&cone_y, y, &k_seq)?;
    let mut steps = first.steps;
    steps.extend(second.steps);
    steps.extend(k_seq.steps);
    let full = CollapseSequence { steps };
    if !replay(&susp, &full)?.is_void() {
        return Err(Error::Contract("transported sequence does not reach void".into()));
    }
    Ok((
        susp,
        ShvResult {
            verdict: ShvVerdict::Yes(full),
            budget_spent: s.budget_spent,
        },
    ))
}

fn reindex_pair(from: &Complex, to: &Complex, p: CollapsePair) -> CollapsePair {
    let map = |f: Face| -> Face {
        f.iter()
            .map(|i| {
                to.universe()
                    .index_of(from.universe().name(i))
                    .expect("same names")
            })
            .collect()
    };
    CollapsePair {
        sigma: map(p.sigma),
        tau: map(p.tau),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face::GroundSet;

    fn cx(ground: &[&str], facets: &[&[&str]]) -> Complex {
        Complex::new(
            GroundSet::new(ground.iter().copied()).unwrap(),
            facets.iter().copied(),
        )
        .unwrap()
    }

    fn pair(c: &Complex, s: &[&str], t: &[&str]) -> CollapsePair {
        CollapsePair {
            sigma: c.face(s).unwrap(),
            tau: c.face(t).unwrap(),
        }
    }

    #[test]
    fn free_pairs_small_cases() {
        let pt = cx(&["v"], &[&["v"]]);
        assert_eq!(free_pairs(&pt), vec![pair(&pt, &["v"], &[])]);
        let two = cx(&["a", "b"], &[&["a"], &["b"]]);
        assert!(free_pairs(&two).is_empty());
        let edge = cx(&["a", "b"], &[&["a", "b"]]);
        assert_eq!(
            free_pairs(&edge),
            vec![pair(&edge, &["a", "b"], &["a"]), pair(&edge, &["a", "b"], &["b"])]
        );
    }

    #[test]
    fn apply_collapse_cases() {
        let edge = cx(&["a", "b"], &[&["a", "b"]]);
        let r = apply_collapse(&edge, pair(&edge, &["a", "b"], &["b"])).unwrap();
        assert_eq!(r, cx(&["a", "b"], &[&["a"]]));

        let pt = cx(&["v"], &[&["v"]]);
        assert!(apply_collapse(&pt, pair(&pt, &["v"], &[])).unwrap().is_void());

        let path = cx(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]]);
        let r = apply_collapse(&path, pair(&path, &["a", "b"], &["a"])).unwrap();
        assert_eq!(r, cx(&["a", "b", "c"], &[&["b", "c"]]));

        // {b} lies in two edges
        assert!(matches!(
            apply_collapse(&path, pair(&path, &["a", "b"], &["b"])),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn search_verdicts() {
        let two = cx(&["a", "b"], &[&["a"], &["b"]]);
        assert_eq!(
            collapse_search(&two, 100, SearchMode::Exhaustive).verdict,
            ShvVerdict::No
        );
        assert_eq!(
            collapse_search(&two, 100, SearchMode::Greedy).verdict,
            ShvVerdict::Unknown
        );

        let fig = cx(
            &["A", "B", "C", "D", "E", "F"],
            &[
                &["A", "E", "C", "D"],
                &["F", "B", "C", "D"],
                &["A", "F", "D"],
                &["B", "E", "C"],
            ],
        );
        assert!(fig.is_cone().is_none());
        let r = collapse_search(&fig, DEFAULT_BUDGET, SearchMode::Greedy);
        let seq = r.sequence().expect("collapsible");
        assert!(replay(&fig, seq).unwrap().is_void());
    }

    #[test]
    fn exhausted_zero_euler_complex_is_no() {
        // circle plus an isolated point: χ̃ = 0 but no free pair at all
        let c = cx(
            &["a", "b", "c", "p"],
            &[&["a", "b"], &["b", "c"], &["a", "c"], &["p"]],
        );
        assert_eq!(c.reduced_euler_characteristic(), 0);
        let r = collapse_search(&c, DEFAULT_BUDGET, SearchMode::Exhaustive);
        assert_eq!(r.verdict, ShvVerdict::No);
        assert!(r.budget_spent > 0);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let fig = cx(
            &["A", "B", "C", "D", "E", "F"],
            &[
                &["A", "E", "C", "D"],
                &["F", "B", "C", "D"],
                &["A", "F", "D"],
                &["B", "E", "C"],
            ],
        );
        let r = collapse_search(&fig, 1, SearchMode::Exhaustive);
        assert_eq!(r.verdict, ShvVerdict::Unknown);
        assert_eq!(r.budget_spent, 1);
    }

    #[test]
    fn lifted_collapse_cases() {
        let edge = cx(&["a", "v"], &[&["a", "v"]]);
        let lk = edge.link("a").unwrap();
        let lk_seq = CollapseSequence {
            steps: vec![pair(&lk, &["v"], &[])],
        };
        let lifted = lifted_collapse(&edge, "a", &lk_seq).unwrap();
        assert_eq!(lifted.steps, vec![pair(&edge, &["a", "v"], &["a"])]);
        assert_eq!(replay(&edge, &lifted).unwrap(), cx(&["a", "v"], &[&["v"]]));

        let ind_p3 = cx(&["a", "b", "c"], &[&["a", "c"], &["b"]]);
        let lk = ind_p3.link("c").unwrap();
        let seq = collapse_search(&lk, 100, SearchMode::Greedy);
        let lifted = lifted_collapse(&ind_p3, "c", seq.sequence().unwrap()).unwrap();
        assert_eq!(
            replay(&ind_p3, &lifted).unwrap(),
            cx(&["a", "b", "c"], &[&["a"], &["b"]])
        );

        let tri = cx(&["a", "b", "c"], &[&["a", "b", "c"]]);
        let lk = tri.link("a").unwrap();
        let seq = collapse_search(&lk, 100, SearchMode::Greedy);
        assert_eq!(seq.sequence().unwrap().len(), 2);
        let lifted = lifted_collapse(&tri, "a", seq.sequence().unwrap()).unwrap();
        assert_eq!(replay(&tri, &lifted).unwrap(), tri.deletion("a").unwrap().extend_ground(["a"]).unwrap());

        let bad = CollapseSequence::default();
        assert!(lifted_collapse(&tri, "a", &bad).is_err());
    }

    #[test]
    fn suspension_transport_cases() {
        let pt = cx(&["v"], &[&["v"]]);
        let s = collapse_search(&pt, 10, SearchMode::Greedy);
        let (susp, r) = suspension_transport(&pt, &s, "x", "y").unwrap();
        assert_eq!(susp, cx(&["v", "x", "y"], &[&["v", "x"], &["v", "y"]]));
        assert!(replay(&susp, r.sequence().unwrap()).unwrap().is_void());

        let edge = cx(&["a", "b"], &[&["a", "b"]]);
        let s = collapse_search(&edge, 10, SearchMode::Greedy);
        let (susp, r) = suspension_transport(&edge, &s, "x", "y").unwrap();
        assert!(replay(&susp, r.sequence().unwrap()).unwrap().is_void());

        let c5 = cx(
            &["a", "b", "c", "d", "e"],
            &[&["a", "b"], &["b", "c"], &["c", "d"], &["d", "e"], &["e", "a"]],
        );
        let cone = c5.cone_over("o").unwrap();
        let s = collapse_search(&cone, DEFAULT_BUDGET, SearchMode::Greedy);
        let (susp, r) = suspension_transport(&cone, &s, "x", "y").unwrap();
        assert!(replay(&susp, r.sequence().unwrap()).unwrap().is_void());

        let no = ShvResult {
            verdict: ShvVerdict::Unknown,
            budget_spent: 0,
        };
        assert!(suspension_transport(&pt, &no, "x", "y").is_err());
    }

    #[test]
    fn sequence_json_round_trip() {
        let edge = cx(&["a", "b"], &[&["a", "b"]]);
        let seq = collapse_search(&edge, 10, SearchMode::Greedy);
        let json = seq.sequence().unwrap().to_json(&edge);
        let text = serde_json::to_string(&json).unwrap();
        assert_eq!(
            text,
            r#"{"steps":[{"sigma":["a","b"],"tau":["b"]},{"sigma":["a"],"tau":[]}]}"#
        );
        let back = CollapseSequence::from_json(&json, &edge).unwrap();
        assert_eq!(&back, seq.sequence().unwrap());
    }
}
