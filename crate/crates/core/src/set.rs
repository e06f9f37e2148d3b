//! Member sets: finite sets of ground-set elements stored as bitsets.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::error::{domain, Result};

/// Label of a ground-set element.
pub type ElementId = usize;

/// A finite set of elements backed by a bitset.
///
/// The bitset length is always `max element + 1`, so structural equality and
/// hashing coincide with set equality. Ordering is lexicographic on the
/// increasing element sequences, which is the canonical member order used
/// throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MemberSet {
    bits: FixedBitSet,
}

impl MemberSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a set from arbitrary elements; duplicates collapse.
    pub fn from_elements<I: IntoIterator<Item = ElementId>>(elements: I) -> Self {
        let mut bits = FixedBitSet::new();
        for e in elements {
            bits.grow_and_insert(e);
        }
        let mut set = Self { bits };
        set.normalize();
        set
    }

    fn normalize(&mut self) {
        let len = self.bits.maximum().map_or(0, |m| m + 1);
        if len != self.bits.len() {
            let mut bits = FixedBitSet::with_capacity(len);
            bits.extend(self.bits.ones());
            self.bits = bits;
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    #[inline]
    pub fn contains(&self, e: ElementId) -> bool {
        self.bits.contains(e)
    }

    /// Largest element, if any.
    pub fn max_element(&self) -> Option<ElementId> {
        self.bits.maximum()
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.elements().collect()
    }

    #[inline]
    pub fn intersection_size(&self, other: &MemberSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    #[inline]
    pub fn is_subset(&self, other: &MemberSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Applies an element relabelling.
    pub fn map_elements(&self, f: impl Fn(ElementId) -> ElementId) -> MemberSet {
        MemberSet::from_elements(self.elements().map(f))
    }

    /// All `u`-element subsets in canonical order.
    pub fn u_subsets(&self, u: usize) -> Result<Vec<MemberSet>> {
        let elems = self.to_vec();
        if u > elems.len() {
            return Err(domain(format!(
                "subset size {u} exceeds set size {}",
                elems.len()
            )));
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..u).collect();
        loop {
            out.push(MemberSet::from_elements(idx.iter().map(|&i| elems[i])));
            // advance the index combination; lexicographic order on positions
            // matches lexicographic order on elements since `elems` is sorted
            let Some(pos) = (0..u).rev().find(|&p| idx[p] < elems.len() - u + p) else {
                break;
            };
            idx[pos] += 1;
            for q in pos + 1..u {
                idx[q] = idx[q - 1] + 1;
            }
        }
        Ok(out)
    }
}

/// `|a ∩ b|`.
#[inline]
pub fn intersection_size(a: &MemberSet, b: &MemberSet) -> usize {
    a.intersection_size(b)
}

/// All `u`-element subsets of `f` in canonical order.
pub fn u_subsets(f: &MemberSet, u: usize) -> Result<Vec<MemberSet>> {
    f.u_subsets(u)
}

impl Ord for MemberSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements().cmp(other.elements())
    }
}

impl PartialOrd for MemberSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<ElementId> for MemberSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        Self::from_elements(iter)
    }
}

impl Serialize for MemberSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl fmt::Debug for MemberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for MemberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
