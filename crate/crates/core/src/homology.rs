//! Reduced integral simplicial homology and cohomology.
//!
//! Chains live on the augmented complex, so the empty face spans degree −1
//! and the irrelevant complex has `H̃₋₁ = ℤ`. Cohomology is computed from the
//! transposed boundary maps with its own Smith normal forms rather than via
//! universal coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::grape::ShClass;
use crate::snf::{invariant_factors, IntMatrix};

/// Betti numbers and torsion coefficients (invariant-factor form) per degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti: BTreeMap<i64, usize>,
    pub torsion: BTreeMap<i64, Vec<u64>>,
}

impl HomologyProfile {
    pub fn betti(&self, k: i64) -> usize {
        self.betti.get(&k).copied().unwrap_or(0)
    }

    pub fn torsion(&self, k: i64) -> &[u64] {
        self.torsion.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_trivial(&self) -> bool {
        self.betti.values().all(|&b| b == 0) && self.torsion.values().all(Vec::is_empty)
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.values().any(|t| !t.is_empty())
    }

    /// Degrees with a nonzero group.
    pub fn support(&self) -> Vec<i64> {
        let mut ks: Vec<i64> = self
            .betti
            .iter()
            .filter(|(_, &b)| b > 0)
            .map(|(k, _)| *k)
            .chain(self.torsion.iter().filter(|(_, t)| !t.is_empty()).map(|(k, _)| *k))
            .collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }
}

fn sign(face: Face, i: usize) -> i64 {
    if face.iter().take_while(|&j| j < i).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn boundary_between(rows: &[Face], cols: &[Face]) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (c, sigma) in cols.iter().enumerate() {
        for i in sigma.iter() {
            let tau = sigma.without(i);
            let r = rows
                .binary_search_by(|f| f.cmp_lex(tau))
                .expect("boundary face present");
            m.set(r, c, sign(*sigma, i));
        }
    }
    m
}

/// `∂ₖ` from `k`-faces to `(k−1)`-faces, both lexicographically ordered.
///
/// `∂₀` maps every vertex to the empty face; `∂₋₁` is the zero map out of
/// the empty face.
pub fn boundary_matrix(c: &Complex, k: isize) -> Result<IntMatrix> {
    match c.dim() {
        Some(d) if (-1..=d).contains(&k) => {}
        _ => {
            return Err(Error::Input(format!(
                "degree {k} outside the range of the complex"
            )))
        }
    }
    Ok(boundary_between(&c.faces_of_dim(k - 1), &c.faces_of_dim(k)))
}

struct ChainComplex {
    lo: i64,
    sizes: Vec<usize>,
    // boundaries[i] is ∂ for degree lo + i (source degree)
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    fn new(c: &Complex) -> Option<Self> {
        let dim = c.dim()?;
        let faces: Vec<Vec<Face>> = (-1..=dim).map(|k| c.faces_of_dim(k)).collect();
        let boundaries = (0..faces.len())
            .map(|i| {
                if i == 0 {
                    IntMatrix::zeros(0, faces[0].len())
                } else {
                    boundary_between(&faces[i - 1], &faces[i])
                }
            })
            .collect();
        Some(ChainComplex {
            lo: -1,
            sizes: faces.iter().map(Vec::len).collect(),
            boundaries,
        })
    }
}

struct Reduced {
    rank: usize,
    torsion: Vec<u64>,
}

fn reduce(m: &IntMatrix) -> Reduced {
    let factors = invariant_factors(m);
    Reduced {
        rank: factors.len(),
        torsion: factors
            .iter()
            .filter(|d| !d.is_one())
            .map(to_u64)
            .collect(),
    }
}

fn to_u64(d: &BigInt) -> u64 {
    d.to_u64().expect("torsion coefficient fits in 64 bits")
}

/// `H̃ₖ(c; ℤ)` for `k` from −1 to `dim c`. The void complex has no groups.
pub fn reduced_homology(c: &Complex) -> HomologyProfile {
    let Some(cc) = ChainComplex::new(c) else {
        return HomologyProfile::default();
    };
    let reduced: Vec<Reduced> = cc.boundaries.iter().map(reduce).collect();
    let mut profile = HomologyProfile::default();
    for i in 0..cc.sizes.len() {
        let k = cc.lo + i as i64;
        let out_rank = reduced[i].rank;
        let (in_rank, torsion) = match reduced.get(i + 1) {
            Some(r) => (r.rank, r.torsion.clone()),
            None => (0, Vec::new()),
        };
        profile.betti.insert(k, cc.sizes[i] - out_rank - in_rank);
        profile.torsion.insert(k, torsion);
    }
    profile
}

/// `H̃ᵏ(c; ℤ)` from the coboundaries `δᵏ = ∂ₖ₊₁ᵀ`.
pub fn reduced_cohomology(c: &Complex) -> HomologyProfile {
    let Some(cc) = ChainComplex::new(c) else {
        return HomologyProfile::default();
    };
    // coboundaries[i] : C^{lo+i} → C^{lo+i+1}
    let coboundaries: Vec<Reduced> = (0..cc.sizes.len())
        .map(|i| match cc.boundaries.get(i + 1) {
            Some(b) => reduce(&b.transpose()),
            None => Reduced {
                rank: 0,
                torsion: Vec::new(),
            },
        })
        .collect();
    let mut profile = HomologyProfile::default();
    for i in 0..cc.sizes.len() {
        let k = cc.lo + i as i64;
        let out_rank = coboundaries[i].rank;
        let (in_rank, torsion) = match i.checked_sub(1) {
            Some(p) => (coboundaries[p].rank, coboundaries[p].torsion.clone()),
            None => (0, Vec::new()),
        };
        profile.betti.insert(k, cc.sizes[i] - out_rank - in_rank);
        profile.torsion.insert(k, torsion);
    }
    profile
}

/// Outcome of comparing a complex's (co)homology with its dual's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub ground_size: usize,
    pub pass: bool,
    /// First degree `i` where `H̃ᵢ(Δ) ≇ H̃^{|X|−i−3}(Δ*)` or `H̃ⁱ(Δ) ≇ H̃_{|X|−i−3}(Δ*)`.
    pub first_violation: Option<i64>,
}

fn same_group(a: &HomologyProfile, i: i64, b: &HomologyProfile, j: i64) -> bool {
    a.betti(i) == b.betti(j) && a.torsion(i) == b.torsion(j)
}

/// Checks combinatorial Alexander duality over `ℤ`, with `|X|` the ground size.
pub fn check_alexander_duality(c: &Complex) -> DualityReport {
    let n = c.ground_len() as i64;
    let dual = c.alexander_dual();
    let (h, co) = (reduced_homology(c), reduced_cohomology(c));
    let (dh, dco) = (reduced_homology(&dual), reduced_cohomology(&dual));
    let first_violation = (-1..=n).find(|&i| {
        let j = n - i - 3;
        !same_group(&h, i, &dco, j) || !same_group(&co, i, &dh, j)
    });
    DualityReport {
        ground_size: c.ground_len(),
        pass: first_violation.is_none(),
        first_violation,
    }
}

/// Whether the homology of `c` is that of the claimed class.
pub fn matches_sphere(c: &Complex, class: ShClass) -> bool {
    profile_matches(&reduced_homology(c), class)
}

pub fn profile_matches(h: &HomologyProfile, class: ShClass) -> bool {
    match class {
        ShClass::Void => h.is_trivial(),
        ShClass::CrossPolytopeBoundary(n) => {
            let k = n as i64 - 1;
            !h.has_torsion()
                && h.betti(k) == 1
                && h.betti.iter().all(|(&d, &b)| d == k || b == 0)
        }
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

    fn square() -> Complex {
        cx(
            &["x1", "y1", "x2", "y2"],
            &[&["x1", "x2"], &["x1", "y2"], &["y1", "x2"], &["y1", "y2"]],
        )
    }

    #[test]
    fn boundary_matrices() {
        let edge = cx(&["a", "b"], &[&["a", "b"]]);
        let d1 = boundary_matrix(&edge, 1).unwrap();
        assert_eq!((d1.rows, d1.cols), (2, 1));
        assert_eq!(d1.data, vec![-1, 1]);
        let two = cx(&["a", "b"], &[&["a"], &["b"]]);
        let d0 = boundary_matrix(&two, 0).unwrap();
        assert_eq!((d0.rows, d0.cols, d0.data.clone()), (1, 2, vec![1, 1]));
        assert!(boundary_matrix(&two, 1).is_err());
        assert!(boundary_matrix(&cx(&["a"], &[]), -1).is_err());

        let sq = square();
        for k in 0..1 {
            let a = boundary_matrix(&sq, k).unwrap();
            let b = boundary_matrix(&sq, k + 1).unwrap();
            assert!(a.mul(&b).is_zero());
        }
    }

    #[test]
    fn homology_examples() {
        let irr = cx(&["a"], &[&[]]);
        let h = reduced_homology(&irr);
        assert_eq!(h.betti(-1), 1);
        assert_eq!(h.support(), vec![-1]);

        let h = reduced_homology(&square());
        assert_eq!(h.support(), vec![1]);
        assert_eq!(h.betti(1), 1);

        let full = Complex::simplex(GroundSet::new(["a", "b", "c"]).unwrap());
        assert!(reduced_homology(&full).is_trivial());
        assert!(reduced_homology(&cx(&["a"], &[])).is_trivial());
        assert!(reduced_homology(&cx(&["a"], &[])).betti.is_empty());
    }

    #[test]
    fn cohomology_examples() {
        let co = reduced_cohomology(&square());
        assert_eq!(co.betti(1), 1);
        assert_eq!(co.support(), vec![1]);
        let irr = cx(&[], &[&[]]);
        assert_eq!(reduced_cohomology(&irr).betti(-1), 1);
    }

    #[test]
    fn projective_plane_torsion_moves_up_in_cohomology() {
        // six-vertex triangulation of RP²
        let rp2 = cx(
            &["1", "2", "3", "4", "5", "6"],
            &[
                &["1", "2", "3"],
                &["1", "3", "4"],
                &["1", "4", "5"],
                &["1", "5", "6"],
                &["1", "2", "6"],
                &["2", "3", "5"],
                &["2", "4", "5"],
                &["2", "4", "6"],
                &["3", "4", "6"],
                &["3", "5", "6"],
            ],
        );
        let h = reduced_homology(&rp2);
        assert_eq!(h.torsion(1), &[2]);
        assert_eq!(h.support(), vec![1]);
        let co = reduced_cohomology(&rp2);
        assert_eq!(co.torsion(2), &[2]);
        assert_eq!(co.support(), vec![2]);
        assert!(check_alexander_duality(&rp2).pass);
    }

    #[test]
    fn duality_degenerates_on_an_empty_ground() {
        let irrelevant = Complex::irrelevant(GroundSet::new(Vec::<String>::new()).unwrap());
        let r = check_alexander_duality(&irrelevant);
        assert!(!r.pass);
        assert_eq!(r.first_violation, Some(-1));
    }

    #[test]
    fn duality_examples() {
        let s0 = cx(&["a", "b"], &[&["a"], &["b"]]);
        let r = check_alexander_duality(&s0);
        assert!(r.pass);
        assert_eq!(r.ground_size, 2);
        assert!(check_alexander_duality(&cx(&["a", "b", "c"], &[])).pass);
        let c5 = cx(
            &["a", "b", "c", "d", "e"],
            &[&["a", "b"], &["b", "c"], &["c", "d"], &["d", "e"], &["e", "a"]],
        );
        assert!(check_alexander_duality(&c5).pass);
        assert_eq!(reduced_cohomology(&c5.alexander_dual()).betti(1), 1);
    }

    #[test]
    fn sphere_matching() {
        let pt = cx(&["v"], &[&["v"]]);
        assert!(matches_sphere(&pt, ShClass::Void));
        assert!(matches_sphere(&square(), ShClass::CrossPolytopeBoundary(2)));
        assert!(!matches_sphere(&square(), ShClass::CrossPolytopeBoundary(1)));
        assert!(matches_sphere(&cx(&[], &[&[]]), ShClass::CrossPolytopeBoundary(0)));
    }

    #[test]
    fn profile_json_shape() {
        let h = reduced_homology(&square());
        let v = serde_json::to_value(&h).unwrap();
        assert_eq!(v["betti"]["-1"], 0);
        assert_eq!(v["betti"]["1"], 1);
        assert_eq!(v["torsion"]["1"], serde_json::json!([]));
    }
}
