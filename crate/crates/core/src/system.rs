//! Set systems given by a membership oracle, and the primitives every
//! enumeration engine is built from.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};

/// Decides membership of a sorted element set in the family `F`.
///
/// Implementations must be pure: the same input always yields the same
/// answer. Input slices are sorted ascending and duplicate-free.
pub trait Membership: Send + Sync {
    fn contains(&self, set: &[Element]) -> bool;

    /// Whether `base ∪ {y}` is a member, for a `base` already known to be a
    /// member and `y ∉ base`. Override when an incremental test is cheaper
    /// than a full [`contains`](Self::contains).
    fn extends(&self, base: &[Element], y: Element) -> bool {
        let mut v = Vec::with_capacity(base.len() + 1);
        let pos = base.partition_point(|&x| x < y);
        v.extend_from_slice(&base[..pos]);
        v.push(y);
        v.extend_from_slice(&base[pos..]);
        self.contains(&v)
    }
}

impl<F> Membership for F
where
    F: Fn(&[Element]) -> bool + Send + Sync,
{
    fn contains(&self, set: &[Element]) -> bool {
        self(set)
    }
}

/// The structural class a system is declared to belong to.
///
/// Classes nest: hereditary and connected hereditary systems are commutable,
/// and every commutable system is strongly accessible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemClass {
    Hereditary,
    ConnectedHereditary,
    Commutable,
    StronglyAccessible,
}

impl SystemClass {
    pub fn is_commutable(self) -> bool {
        !matches!(self, SystemClass::StronglyAccessible)
    }
}

impl fmt::Display for SystemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemClass::Hereditary => "hereditary",
            SystemClass::ConnectedHereditary => "connected hereditary",
            SystemClass::Commutable => "commutable",
            SystemClass::StronglyAccessible => "strongly accessible",
        })
    }
}

/// The candidate pool `A` of an extension query.
#[derive(Clone, Copy, Debug)]
pub enum Scope<'a> {
    /// The whole ground set.
    All,
    Within(&'a ElementSet),
}

impl<'a> From<&'a ElementSet> for Scope<'a> {
    fn from(set: &'a ElementSet) -> Self {
        Scope::Within(set)
    }
}

/// A ground set `1..=size` together with a membership oracle.
///
/// Immutable after construction; the only interior state is the oracle call
/// counter, which is atomic.
pub struct SetSystemInstance {
    name: String,
    size: usize,
    oracle: Arc<dyn Membership>,
    class: SystemClass,
    q_bound: Option<usize>,
    good: Vec<bool>,
    calls: AtomicU64,
}

impl Clone for SetSystemInstance {
    fn clone(&self) -> Self {
        SetSystemInstance {
            name: self.name.clone(),
            size: self.size,
            oracle: Arc::clone(&self.oracle),
            class: self.class,
            q_bound: self.q_bound,
            good: self.good.clone(),
            calls: AtomicU64::new(0),
        }
    }
}

impl fmt::Debug for SetSystemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetSystemInstance")
            .field("name", &self.name)
            .field("size", &self.size)
            .field("class", &self.class)
            .field("q_bound", &self.q_bound)
            .finish_non_exhaustive()
    }
}

impl SetSystemInstance {
    /// Wraps an oracle over `1..=size`. Fails if the oracle rejects `∅`.
    ///
    /// The declared class defaults to [`SystemClass::StronglyAccessible`].
    pub fn new(
        name: impl Into<String>,
        size: usize,
        oracle: impl Membership + 'static,
    ) -> Result<Self> {
        Self::from_shared(name, size, Arc::new(oracle))
    }

    pub fn from_shared(
        name: impl Into<String>,
        size: usize,
        oracle: Arc<dyn Membership>,
    ) -> Result<Self> {
        let name = name.into();
        if !oracle.contains(&[]) {
            return Err(Error::precondition(format!(
                "system `{name}`: the empty set must be a member"
            )));
        }
        let good = (0..size)
            .map(|i| oracle.contains(&[Element::from_index(i)]))
            .collect();
        Ok(SetSystemInstance {
            name,
            size,
            oracle,
            class: SystemClass::StronglyAccessible,
            q_bound: None,
            good,
            calls: AtomicU64::new(0),
        })
    }

    pub fn declared(mut self, class: SystemClass) -> Self {
        self.class = class;
        self
    }

    pub fn with_q_bound(mut self, q: usize) -> Self {
        self.q_bound = Some(q);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn class(&self) -> SystemClass {
        self.class
    }

    pub fn q_bound(&self) -> Option<usize> {
        self.q_bound
    }

    pub fn oracle(&self) -> &Arc<dyn Membership> {
        &self.oracle
    }

    /// Number of oracle evaluations made through this instance so far.
    pub fn oracle_calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Element> {
        (1..=self.size as u32).map(Element)
    }

    pub fn check_range(&self, x: &ElementSet) -> Result<()> {
        match (x.min(), x.max()) {
            (Some(e), _) if e.0 == 0 => Err(Error::ElementOutOfRange {
                element: e,
                size: self.size,
            }),
            (_, Some(e)) if e.0 as usize > self.size => Err(Error::ElementOutOfRange {
                element: e,
                size: self.size,
            }),
            _ => Ok(()),
        }
    }

    /// Unchecked membership query. `set` must be sorted and in range.
    pub fn contains(&self, set: &[Element]) -> bool {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.oracle.contains(set)
    }

    /// Whether `base ∪ {y}` is a member, given that `base` is one.
    pub fn extends(&self, base: &ElementSet, y: Element) -> bool {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.oracle.extends(base.as_slice(), y)
    }

    pub fn is_solution(&self, x: &ElementSet) -> Result<bool> {
        self.check_range(x)?;
        Ok(self.contains(x.as_slice()))
    }

    pub fn is_good(&self, e: Element) -> bool {
        self.good.get(e.index()).copied().unwrap_or(false)
    }

    /// `Z`: the elements whose singleton is a member.
    pub fn good_singletons(&self) -> ElementSet {
        self.elements().filter(|&e| self.is_good(e)).collect()
    }

    /// `X^+_A`: elements of `a \ x` whose addition keeps `x` a member.
    pub fn extension_set(&self, x: &ElementSet, a: Scope<'_>) -> Result<ElementSet> {
        if !self.is_solution(x)? {
            return Err(Error::precondition("extension_set needs x ∈ F"));
        }
        if let Scope::Within(a) = a {
            self.check_range(a)?;
        }
        Ok(self.extension_unchecked(x, a))
    }

    pub(crate) fn extension_unchecked(&self, x: &ElementSet, a: Scope<'_>) -> ElementSet {
        self.candidates(x, a)
            .filter(|&y| self.extends(x, y))
            .collect()
    }

    /// Elements of `a \ x` in ascending order.
    pub(crate) fn candidates<'a>(
        &'a self,
        x: &'a ElementSet,
        a: Scope<'a>,
    ) -> Box<dyn Iterator<Item = Element> + 'a> {
        match a {
            Scope::All => Box::new(self.elements().filter(move |&y| !x.contains(y))),
            Scope::Within(set) => Box::new(set.iter().filter(move |&y| !x.contains(y))),
        }
    }

    /// Smallest good singleton of `x`.
    pub fn source(&self, x: &ElementSet) -> Result<Element> {
        if x.is_empty() {
            return Err(Error::precondition("source of the empty set is undefined"));
        }
        self.check_range(x)?;
        self.source_unchecked(x)
            .ok_or_else(|| Error::precondition("x contains no good singleton, so x ∉ F"))
    }

    pub(crate) fn source_unchecked(&self, x: &ElementSet) -> Option<Element> {
        x.iter().find(|&e| self.is_good(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> SetSystemInstance {
        // cliques of the path 1-2-3
        SetSystemInstance::new("path", 3, |s: &[Element]| {
            s.iter()
                .all(|a| s.iter().all(|b| a == b || a.0.abs_diff(b.0) == 1))
        })
        .unwrap()
        .declared(SystemClass::Hereditary)
    }

    #[test]
    fn empty_set_must_be_member() {
        let err = SetSystemInstance::new("bad", 2, |s: &[Element]| !s.is_empty()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn membership_and_range() {
        let inst = path3();
        assert!(inst.is_solution(&ElementSet::new()).unwrap());
        assert!(!inst.is_solution(&ElementSet::from_labels([1, 3])).unwrap());
        assert!(inst.is_solution(&ElementSet::from_labels([2, 3])).unwrap());
        assert!(matches!(
            inst.is_solution(&ElementSet::from_labels([4])),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert!(matches!(
            inst.is_solution(&ElementSet::from_labels([0])),
            Err(Error::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn extension_and_source() {
        let inst = path3();
        let x = ElementSet::from_labels([2]);
        assert_eq!(
            inst.extension_set(&x, Scope::All).unwrap().labels(),
            vec![1, 3]
        );
        let a = ElementSet::from_labels([3]);
        assert_eq!(
            inst.extension_set(&x, Scope::Within(&a)).unwrap().labels(),
            vec![3]
        );
        assert!(inst
            .extension_set(&ElementSet::from_labels([1, 3]), Scope::All)
            .is_err());
        assert_eq!(
            inst.source(&ElementSet::from_labels([2, 3])).unwrap(),
            Element(2)
        );
        assert!(inst.source(&ElementSet::new()).is_err());
        assert_eq!(inst.good_singletons().labels(), vec![1, 2, 3]);
    }
}
