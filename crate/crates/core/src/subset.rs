//! Ground sets and subsets of them.
//!
//! Elements of a ground set are identified by their index `0..n`; names are
//! only carried for input and output. A [`Subset`] is a bit mask over those
//! indices and does not remember which ground set it belongs to, so callers
//! pass the ground size wherever a complement is needed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set a [`Subset`] mask can address.
pub const MAX_GROUND: usize = 30;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    /// The whole ground set `{0, .., n-1}`.
    pub const fn full(n: usize) -> Self {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub const fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        Subset(elements.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub const fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub const fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub const fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub const fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub const fn insert(self, i: usize) -> Subset {
        Subset(self.0 | (1 << i))
    }

    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `{0, .., n-1}` in increasing mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> + Clone {
        (0..=Subset::full(n).0).map(Subset)
    }

    /// All subsets of `self`, in increasing mask order, starting with the empty set.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Subset(cur))
        })
    }

    /// Nonempty subsets of `self` ordered by size, then by mask.
    pub fn nonempty_subsets_by_size(self) -> Vec<Subset> {
        let mut out: Vec<Subset> = self.subsets().filter(|s| !s.is_empty()).collect();
        out.sort_by_key(|s| (s.len(), s.0));
        out
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone)]
pub struct Elements(u32);

impl Iterator for Elements {
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
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}

/// A nonempty finite universe with named elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    names: Vec<String>,
}

impl GroundSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyGround);
        }
        if names.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge {
                n: names.len(),
                max: MAX_GROUND,
            });
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateElement(a.clone()));
            }
        }
        Ok(GroundSet { names })
    }

    /// Ground set with elements named `0`, `1`, ...
    pub fn indexed(n: usize) -> Result<Self> {
        GroundSet::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn subset_from_names<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> Result<Subset> {
        names
            .into_iter()
            .try_fold(Subset::EMPTY, |acc, n| Ok(acc.insert(self.index_of(n)?)))
    }

    pub fn subset_names(&self, s: Subset) -> Vec<String> {
        s.iter().map(|i| self.names[i].clone()).collect()
    }

    /// `{a,b}` style rendering.
    pub fn format_subset(&self, s: Subset) -> String {
        format!("{{{}}}", self.subset_names(s).join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_involutive_and_disjoint() {
        let n = 5;
        for x in Subset::all(n) {
            let c = x.complement(n);
            assert_eq!(c.complement(n), x);
            assert!(!x.intersects(c));
            assert_eq!(x.union(c), Subset::full(n));
        }
    }

    #[test]
    fn subsets_enumerates_every_submask_once() {
        let s = Subset::from_elements([0, 2, 3]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset_of(s)));
        let by_size = s.nonempty_subsets_by_size();
        assert_eq!(by_size.len(), 7);
        assert_eq!(by_size[0], Subset::singleton(0));
        assert_eq!(by_size[6], s);
    }

    #[test]
    fn ground_set_rejects_bad_names() {
        assert_eq!(GroundSet::new(Vec::<String>::new()), Err(Error::EmptyGround));
        assert!(matches!(GroundSet::new(["a", "a"]), Err(Error::DuplicateElement(_))));
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        assert_eq!(g.subset_from_names(["c", "a"]).unwrap(), Subset::from_elements([0, 2]));
        assert_eq!(g.format_subset(Subset::from_elements([0, 2])), "{a,c}");
    }
}
