//! Faces as fixed-width index sets, and the named ground set they index into.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set a [`GroundSet`] may hold.
pub const MAX_GROUND: usize = 64;

/// A set of ground-element indices.
///
/// Bit `i` is set iff the element at position `i` of the owning
/// [`GroundSet`] is a member. The empty face is `Face::EMPTY`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub const fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        Face(1 << i)
    }

    /// Face containing every index in `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Face(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Face(self.0 & !(1 << i))
    }

    pub fn union(self, other: Face) -> Self {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Self {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Self {
        Face(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> FaceIter {
        FaceIter(self.0)
    }

    /// Lowest member index, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Lexicographic comparison of the sorted index lists.
    pub fn cmp_lex(self, other: Face) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// All subsets of `self`, including `EMPTY` and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Face(cur))
        })
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct FaceIter(u64);

impl Iterator for FaceIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for FaceIter {}

impl FromIterator<usize> for Face {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(Face::EMPTY, Face::with)
    }
}

/// An ordered list of distinct element names.
///
/// Iteration order is insertion order and fixes the index of each element.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut ground = GroundSet {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            ground.push(name.into())?;
        }
        Ok(ground)
    }

    pub(crate) fn push(&mut self, name: String) -> Result<usize> {
        if name.is_empty() {
            return Err(Error::EmptyName);
        }
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateElement(name));
        }
        if self.names.len() == MAX_GROUND {
            return Err(Error::GroundTooLarge(self.names.len() + 1));
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        Ok(i)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn face_of<I, S>(&self, members: I) -> Result<Face>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        members.into_iter().try_fold(Face::EMPTY, |f, s| {
            let s = s.as_ref();
            self.index_of(s)
                .map(|i| f.with(i))
                .ok_or_else(|| Error::UnknownElement(s.to_owned()))
        })
    }

    pub fn face_names(&self, face: Face) -> Vec<String> {
        face.iter().map(|i| self.names[i].clone()).collect()
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_power_set() {
        let f = Face::from_bits(0b1011);
        let subs: Vec<_> = f.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(f)));
        assert_eq!(subs[0], Face::EMPTY);
        assert_eq!(Face::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn lex_order_follows_index_lists() {
        let ab = Face::from_iter([0, 1]);
        let ac = Face::from_iter([0, 2]);
        let b = Face::singleton(1);
        assert_eq!(ab.cmp_lex(ac), Ordering::Less);
        assert_eq!(ac.cmp_lex(b), Ordering::Less);
        assert_eq!(Face::EMPTY.cmp_lex(b), Ordering::Less);
    }

    #[test]
    fn ground_rejects_duplicates_and_empty_names() {
        assert_eq!(
            GroundSet::new(["a", "a"]).unwrap_err(),
            Error::DuplicateElement("a".into())
        );
        assert_eq!(GroundSet::new([""]).unwrap_err(), Error::EmptyName);
        let too_many = (0..65).map(|i| format!("x{i}"));
        assert!(matches!(
            GroundSet::new(too_many),
            Err(Error::GroundTooLarge(65))
        ));
    }
}
