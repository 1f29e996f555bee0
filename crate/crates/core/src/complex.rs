//! Simplicial complexes over a named ground set.
//!
//! A [`Complex`] stores its facets only; a set is a face iff it is contained
//! in some facet. The void complex has no facets and the irrelevant complex
//! has the single facet `∅`. Every complex remembers its ground set, which
//! may be larger than its vertex set; the Alexander dual depends on it.
//!
//! Complexes derived from one another (links, deletions, duals, ...) share
//! the same underlying [`GroundSet`] table and differ only in which of its
//! elements form their ground, so faces of related complexes are directly
//! comparable as bitmasks.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::face::{Face, GroundSet, MAX_GROUND};

#[derive(Clone)]
pub struct Complex {
    universe: Arc<GroundSet>,
    ground: Face,
    facets: Vec<Face>,
}

/// Interchange form: `{"ground": [...], "facets": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ground: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

/// Reduces a family of sets to its inclusion-maximal members, sorted.
pub(crate) fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| f.is_subset(*k)) {
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept
}

impl Complex {
    /// Builds the complex generated by `generators` (downward closure).
    pub fn new<G, F, S>(ground: GroundSet, generators: G) -> Result<Self>
    where
        G: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let faces = generators
            .into_iter()
            .map(|g| ground.face_of(g))
            .collect::<Result<Vec<_>>>()?;
        let full = Face::full(ground.len());
        Ok(Self::from_parts(Arc::new(ground), full, faces))
    }

    /// Builds a complex from raw faces over a shared ground table.
    ///
    /// Every generator must lie inside `ground`, and `ground` inside the table.
    pub fn from_parts(
        universe: Arc<GroundSet>,
        ground: Face,
        generators: impl IntoIterator<Item = Face>,
    ) -> Self {
        debug_assert!(ground.is_subset(Face::full(universe.len())));
        let facets: Vec<Face> = generators.into_iter().collect();
        debug_assert!(facets.iter().all(|f| f.is_subset(ground)));
        Complex {
            universe,
            ground,
            facets: maximal_faces(facets),
        }
    }

    /// Builds the complex of all subsets of `ground` satisfying `is_face`.
    ///
    /// `is_face` must describe a downward-closed family. Enumerates every
    /// subset of the ground, so the ground is capped at 26 elements.
    pub fn from_predicate(
        universe: Arc<GroundSet>,
        ground: Face,
        mut is_face: impl FnMut(Face) -> bool,
    ) -> Result<Self> {
        let n = ground.len();
        if n > 26 {
            return Err(Error::Input(format!(
                "predicate construction over {n} elements is too large"
            )));
        }
        let positions: Vec<usize> = ground.iter().collect();
        let expand = |local: u64| -> Face {
            positions
                .iter()
                .enumerate()
                .filter(|(j, _)| local >> j & 1 == 1)
                .map(|(_, &i)| i)
                .collect()
        };
        let total = 1u64 << n;
        let member: Vec<bool> = (0..total).map(|m| is_face(expand(m))).collect();
        let mut facets = Vec::new();
        for m in 0..total {
            if member[m as usize] && (0..n).all(|j| m >> j & 1 == 1 || !member[(m | 1 << j) as usize])
            {
                facets.push(expand(m));
            }
        }
        facets.sort_unstable();
        Ok(Complex {
            universe,
            ground,
            facets,
        })
    }

    pub fn void(ground: GroundSet) -> Self {
        let full = Face::full(ground.len());
        Self::from_parts(Arc::new(ground), full, [])
    }

    pub fn irrelevant(ground: GroundSet) -> Self {
        let full = Face::full(ground.len());
        Self::from_parts(Arc::new(ground), full, [Face::EMPTY])
    }

    /// The full simplex `2^X`.
    pub fn simplex(ground: GroundSet) -> Self {
        let full = Face::full(ground.len());
        Self::from_parts(Arc::new(ground), full, [full])
    }

    /// The boundary `2^X ∖ {X}` of the full simplex.
    pub fn simplex_boundary(ground: GroundSet) -> Self {
        let full = Face::full(ground.len());
        let facets: Vec<Face> = full.iter().map(|i| full.without(i)).collect();
        let facets = if facets.is_empty() { vec![] } else { facets };
        Self::from_parts(Arc::new(ground), full, facets)
    }

    pub fn universe(&self) -> &Arc<GroundSet> {
        &self.universe
    }

    pub fn ground_face(&self) -> Face {
        self.ground
    }

    pub fn ground(&self) -> Vec<&str> {
        self.ground.iter().map(|i| self.universe.name(i)).collect()
    }

    pub fn ground_len(&self) -> usize {
        self.ground.len()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Facets as name lists, in lexicographic order of the ground ordering.
    pub fn facet_names(&self) -> Vec<Vec<String>> {
        let mut fs = self.facets.clone();
        fs.sort_by(|a, b| a.cmp_lex(*b));
        fs.into_iter().map(|f| self.universe.face_names(f)).collect()
    }

    pub fn face_names(&self, face: Face) -> Vec<String> {
        self.universe.face_names(face)
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.facets == [Face::EMPTY]
    }

    /// Dimension; `None` for the void complex, `Some(-1)` for the irrelevant one.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    pub fn contains_face(&self, face: Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// Every face, sorted by size and then lexicographically.
    pub fn faces(&self) -> Vec<Face> {
        let mut all: Vec<Face> = self.facets.iter().flat_map(|f| f.subsets()).collect();
        all.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then(a.cmp_lex(*b)));
        all.dedup();
        all
    }

    /// Faces with exactly `k + 1` elements, lexicographically sorted.
    pub fn faces_of_dim(&self, k: isize) -> Vec<Face> {
        if k < -1 {
            return Vec::new();
        }
        let size = (k + 1) as usize;
        let mut out: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| f.len() >= size)
            .flat_map(|f| f.subsets().filter(move |s| s.len() == size))
            .collect();
        out.sort_unstable_by(|a, b| a.cmp_lex(*b));
        out.dedup();
        out
    }

    pub fn vertices(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn vertex_names(&self) -> Vec<String> {
        self.universe.face_names(self.vertices())
    }

    /// Index of `name`, which must belong to this complex's ground.
    pub fn index(&self, name: &str) -> Result<usize> {
        match self.universe.index_of(name) {
            Some(i) if self.ground.contains(i) => Ok(i),
            _ => Err(Error::UnknownElement(name.to_owned())),
        }
    }

    pub fn face(&self, members: &[impl AsRef<str>]) -> Result<Face> {
        members
            .iter()
            .try_fold(Face::EMPTY, |f, s| Ok(f.with(self.index(s.as_ref())?)))
    }

    fn check_in_ground(&self, i: usize) -> Result<()> {
        if i < MAX_GROUND && self.ground.contains(i) {
            Ok(())
        } else {
            Err(Error::Input(format!("index {i} is not in the ground set")))
        }
    }

    /// `dl_x`: faces avoiding `x`, on ground `X ∖ {x}`.
    pub fn deletion(&self, x: &str) -> Result<Self> {
        self.deletion_at(self.index(x)?)
    }

    /// `lk_x`: faces `σ ∌ x` with `σ ∪ {x}` a face, on ground `X ∖ {x}`.
    pub fn link(&self, x: &str) -> Result<Self> {
        self.link_at(self.index(x)?)
    }

    pub fn deletion_at(&self, x: usize) -> Result<Self> {
        self.check_in_ground(x)?;
        let facets = self.facets.iter().map(|f| f.without(x)).collect::<Vec<_>>();
        Ok(Self::from_parts(
            self.universe.clone(),
            self.ground.without(x),
            facets,
        ))
    }

    pub fn link_at(&self, x: usize) -> Result<Self> {
        self.check_in_ground(x)?;
        let facets = self
            .facets
            .iter()
            .filter(|f| f.contains(x))
            .map(|f| f.without(x))
            .collect::<Vec<_>>();
        Ok(Self::from_parts(
            self.universe.clone(),
            self.ground.without(x),
            facets,
        ))
    }

    /// Expresses `other` over this complex's ground table.
    ///
    /// Fails unless every ground name of `other` exists in the table.
    pub fn reindexed_onto(&self, other: &Complex) -> Option<Complex> {
        other.reindexed(&self.universe)
    }

    pub fn reindexed(&self, target: &Arc<GroundSet>) -> Option<Complex> {
        if Arc::ptr_eq(&self.universe, target) || *self.universe == **target {
            return Some(Complex {
                universe: target.clone(),
                ground: self.ground,
                facets: self.facets.clone(),
            });
        }
        let map: Vec<Option<usize>> = (0..self.universe.len())
            .map(|i| target.index_of(self.universe.name(i)))
            .collect();
        let translate = |f: Face| -> Option<Face> {
            f.iter().try_fold(Face::EMPTY, |acc, i| map[i].map(|j| acc.with(j)))
        };
        let ground = translate(self.ground)?;
        let facets = self
            .facets
            .iter()
            .map(|f| translate(*f))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_parts(target.clone(), ground, facets))
    }

    /// True iff both complexes have the same ground set (as a set of names).
    pub fn same_ground(&self, other: &Complex) -> bool {
        self.ground_len() == other.ground_len()
            && other
                .reindexed(&self.universe)
                .is_some_and(|o| o.ground == self.ground)
    }

    fn aligned(&self, other: &Complex) -> Result<Complex> {
        match other.reindexed(&self.universe) {
            Some(o) if o.ground == self.ground => Ok(o),
            _ => Err(Error::GroundMismatch),
        }
    }

    /// Join of two complexes on the same ground set.
    pub fn join(&self, other: &Complex) -> Result<Self> {
        let other = self.aligned(other)?;
        let facets = self
            .facets
            .iter()
            .flat_map(|a| other.facets.iter().map(move |b| a.union(*b)))
            .collect::<Vec<_>>();
        Ok(Self::from_parts(self.universe.clone(), self.ground, facets))
    }

    /// Face-set union over a common ground.
    pub fn union(&self, other: &Complex) -> Result<Self> {
        let other = self.aligned(other)?;
        let facets = self.facets.iter().chain(&other.facets).copied().collect::<Vec<_>>();
        Ok(Self::from_parts(self.universe.clone(), self.ground, facets))
    }

    /// Face-set intersection over a common ground.
    pub fn intersection(&self, other: &Complex) -> Result<Self> {
        let other = self.aligned(other)?;
        let facets = self
            .facets
            .iter()
            .flat_map(|a| other.facets.iter().map(move |b| a.intersection(*b)))
            .collect::<Vec<_>>();
        Ok(Self::from_parts(self.universe.clone(), self.ground, facets))
    }

    /// Adds elements to the ground set; names already in the ground are errors.
    pub fn extend_ground<I, S>(&self, names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut universe = (*self.universe).clone();
        let mut ground = self.ground;
        let mut grown = false;
        for name in names {
            let name = name.into();
            match universe.index_of(&name) {
                Some(i) if ground.contains(i) => return Err(Error::DuplicateElement(name)),
                Some(i) => ground = ground.with(i),
                None => {
                    ground = ground.with(universe.push(name)?);
                    grown = true;
                }
            }
        }
        let universe = if grown {
            Arc::new(universe)
        } else {
            self.universe.clone()
        };
        Ok(Complex {
            universe,
            ground,
            facets: self.facets.clone(),
        })
    }

    /// Index of `x` in a ground that contains it, extending the ground if
    /// needed; `x` must not lie in any face.
    fn fresh_apex(&self, x: &str) -> Result<(Complex, usize)> {
        let c = match self.universe.index_of(x) {
            Some(i) if self.ground.contains(i) => self.clone(),
            _ => self.extend_ground([x])?,
        };
        let i = c.universe.index_of(x).expect("just ensured");
        if c.vertices().contains(i) {
            return Err(Error::NotFresh(x.to_owned()));
        }
        Ok((c, i))
    }

    /// `cone_x(Δ) = Δ * {∅, {x}}` for an apex lying in no face.
    pub fn cone_over(&self, x: &str) -> Result<Self> {
        let (c, i) = self.fresh_apex(x)?;
        let facets = c.facets.iter().map(|f| f.with(i)).collect::<Vec<_>>();
        Ok(Self::from_parts(c.universe.clone(), c.ground, facets))
    }

    /// `susp_{x,y}(Δ) = Δ * {∅, {x}, {y}}` for distinct fresh `x`, `y`.
    pub fn suspension(&self, x: &str, y: &str) -> Result<Self> {
        if x == y {
            return Err(Error::Input("suspension points must differ".into()));
        }
        let (c, i) = self.fresh_apex(x)?;
        let (c, j) = c.fresh_apex(y)?;
        let facets = c
            .facets
            .iter()
            .flat_map(|f| [f.with(i), f.with(j)])
            .collect::<Vec<_>>();
        Ok(Self::from_parts(c.universe.clone(), c.ground, facets))
    }

    /// Elements lying in every facet. Empty for the void and irrelevant complexes.
    pub fn cone_apexes(&self) -> Face {
        match self.facets.split_first() {
            None => Face::EMPTY,
            Some((first, rest)) => rest.iter().fold(*first, |acc, f| acc.intersection(*f)),
        }
    }

    /// The apexes of the complex, or `None` if it is not a cone.
    pub fn is_cone(&self) -> Option<Vec<String>> {
        let apexes = self.cone_apexes();
        (!apexes.is_empty()).then(|| self.universe.face_names(apexes))
    }

    /// Inclusion-minimal subsets of the ground that are not faces.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        if self.is_void() {
            return vec![Face::EMPTY];
        }
        let order: Vec<usize> = self.ground.iter().collect();
        let mut found = Vec::new();
        // Depth-first over faces, extending only by elements after the last one
        // added, so each face is visited once.
        let mut stack: Vec<(Face, usize)> = vec![(Face::EMPTY, 0)];
        while let Some((face, start)) = stack.pop() {
            for (pos, &e) in order.iter().enumerate().skip(start) {
                let cand = face.with(e);
                if self.contains_face(cand) {
                    stack.push((cand, pos + 1));
                } else if cand.iter().all(|d| self.contains_face(cand.without(d))) {
                    found.push(cand);
                }
            }
        }
        found.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then(a.cmp_lex(*b)));
        found.dedup();
        found
    }

    /// `Δ* = {F ⊆ X : X ∖ F ∉ Δ}` on the same ground.
    pub fn alexander_dual(&self) -> Self {
        let facets = self
            .minimal_nonfaces()
            .into_iter()
            .map(|m| self.ground.difference(m))
            .collect::<Vec<_>>();
        Self::from_parts(self.universe.clone(), self.ground, facets)
    }

    /// Same faces, with the ground cut down to the vertex set.
    pub fn restrict_ground(&self) -> Self {
        Complex {
            universe: self.universe.clone(),
            ground: self.vertices(),
            facets: self.facets.clone(),
        }
    }

    /// Every face of `self` is a face of `other`; grounds must agree.
    pub fn is_subcomplex(&self, other: &Complex) -> Result<bool> {
        let other = self.aligned(other)?;
        Ok(self.facets.iter().all(|f| other.contains_face(*f)))
    }

    /// Face-set containment by element names, ignoring the ground sets.
    pub fn faces_within(&self, other: &Complex) -> bool {
        if self.is_void() {
            return true;
        }
        let Some(mine) = self.restrict_ground().reindexed(&other.universe) else {
            return false;
        };
        mine.facets.iter().all(|f| other.contains_face(*f))
    }

    /// Reduced Euler characteristic `Σ_k (-1)^k f_k` over `k ≥ -1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces()
            .iter()
            .map(|f| if f.len() % 2 == 0 { -1 } else { 1 })
            .sum()
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            ground: self.ground().into_iter().map(str::to_owned).collect(),
            facets: self.facet_names(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        let ground = GroundSet::new(json.ground.iter().cloned())?;
        Self::new(ground, &json.facets)
    }

    /// Canonical ordering used when emitting facets.
    pub fn cmp_faces(a: Face, b: Face) -> Ordering {
        a.cmp_lex(b)
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        match other.reindexed(&self.universe) {
            Some(o) => o.ground == self.ground && o.facets == self.facets,
            None => false,
        }
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("ground", &self.ground())
            .field("facets", &self.facet_names())
            .finish()
    }
}

impl Serialize for Complex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = ComplexJson::deserialize(d)?;
        Complex::from_json(&json).map_err(serde::de::Error::custom)
    }
}
