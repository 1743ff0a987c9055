use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::gauge::SlotVec;

/// A ground-set element, identified by its dense 1-based label.
///
/// Labels are totally ordered and the order is the one every algorithm in
/// this crate relies on (`v_i < v_j` iff `i < j`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub u32);

impl Element {
    pub fn label(self) -> u32 {
        self.0
    }

    /// Zero-based position, for indexing dense per-element tables.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn from_index(index: usize) -> Self {
        Element(index as u32 + 1)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for Element {
    fn from(label: u32) -> Self {
        Element(label)
    }
}

/// A sorted, duplicate-free set of elements.
#[derive(Clone, Default)]
pub struct ElementSet {
    items: SlotVec<Element>,
}

impl ElementSet {
    pub fn new() -> Self {
        ElementSet {
            items: SlotVec::new(),
        }
    }

    pub fn singleton(e: Element) -> Self {
        ElementSet {
            items: SlotVec::from_vec(vec![e]),
        }
    }

    /// Builds a set from arbitrary labels, sorting and removing duplicates.
    pub fn from_labels<I: IntoIterator<Item = u32>>(labels: I) -> Self {
        labels.into_iter().map(Element).collect()
    }

    /// Wraps a vector that is already strictly increasing.
    pub(crate) fn from_sorted_vec(items: Vec<Element>) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        ElementSet {
            items: SlotVec::from_vec(items),
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.items
    }

    pub fn iter(&self) -> std::iter::Copied<std::slice::Iter<'_, Element>> {
        self.items.iter().copied()
    }

    pub fn labels(&self) -> Vec<u32> {
        self.iter().map(Element::label).collect()
    }

    pub fn min(&self) -> Option<Element> {
        self.items.first().copied()
    }

    pub fn max(&self) -> Option<Element> {
        self.items.last().copied()
    }

    pub fn contains(&self, e: Element) -> bool {
        self.items.binary_search(&e).is_ok()
    }

    /// Inserts `e`, returning `false` when it was already present.
    pub fn insert(&mut self, e: Element) -> bool {
        match self.items.binary_search(&e) {
            Ok(_) => false,
            Err(pos) => {
                self.items.insert(pos, e);
                true
            }
        }
    }

    pub fn with(&self, e: Element) -> ElementSet {
        let mut out = SlotVec::with_capacity(self.len() + 1);
        let mut placed = false;
        for x in self.iter() {
            if !placed && e <= x {
                if e < x {
                    out.push(e);
                }
                placed = true;
            }
            out.push(x);
        }
        if !placed {
            out.push(e);
        }
        ElementSet { items: out }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut out = SlotVec::with_capacity(self.len() + other.len());
        let (a, b) = (self.as_slice(), other.as_slice());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) => match x.cmp(&y) {
                    Ordering::Less => {
                        i += 1;
                        x
                    }
                    Ordering::Greater => {
                        j += 1;
                        y
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        x
                    }
                },
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, Some(&y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        ElementSet { items: out }
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut out = SlotVec::new();
        for x in self.iter().filter(|&x| !other.contains(x)) {
            out.push(x);
        }
        ElementSet { items: out }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut out = SlotVec::new();
        for x in self.iter().filter(|&x| other.contains(x)) {
            out.push(x);
        }
        ElementSet { items: out }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.len() <= other.len() && self.iter().all(|x| other.contains(x))
    }

    /// Elements picked out by the bits of `mask`, bit `i` selecting
    /// `self.as_slice()[i]`.
    pub fn subset_by_mask(&self, mask: u64) -> ElementSet {
        let mut out = SlotVec::new();
        for (i, x) in self.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out.push(x);
            }
        }
        ElementSet { items: out }
    }

    /// Inverse of [`subset_by_mask`](Self::subset_by_mask); `None` if `sub`
    /// is not a subset of `self`.
    pub fn mask_of(&self, sub: &ElementSet) -> Option<u64> {
        let mut mask = 0u64;
        for x in sub.iter() {
            let pos = self.items.binary_search(&x).ok()?;
            mask |= 1 << pos;
        }
        Some(mask)
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut v: Vec<Element> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ElementSet {
            items: SlotVec::from_vec(v),
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = Element;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Element>>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.as_slice() == other.as_slice()
    }
}

impl Eq for ElementSet {}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order of the sorted element sequences.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_slice().cmp(other.as_slice())
    }
}

impl Hash for ElementSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.as_slice().hash(state);
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.0)).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.as_slice().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<Element>::deserialize(deserializer)?;
        Ok(v.into_iter().collect())
    }
}
