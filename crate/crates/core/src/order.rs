//! Greedy completion and the canonical order it induces on maximal solutions.
//!
//! `complete(X, A)` repeatedly adds `choose(X, A)` until `X^+_A` is empty.
//! Running it from `{source(S)}` inside a maximal `S` permutes `S` into its
//! canonical order `s_1, …, s_|S|`; `pi`, `core` and `parent` are read off
//! that order and define the reverse-search forest.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::gauge::SlotVec;
use crate::system::{Scope, SetSystemInstance};

/// How `complete` picks the next element from `X^+_A`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChooseStrategy {
    /// The smallest label in `X^+_A`.
    #[default]
    MinElement,
    /// The smallest `⟨layer, label⟩` pair, layers taken relative to `X` from
    /// `source(X)`. Required by the restricted-problem engines.
    LayeredMin,
}

/// Layers of `X ∪ X^+` relative to `X` from a starting element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerAssignment {
    pub start: Element,
    entries: Vec<(Element, u32)>,
}

impl LayerAssignment {
    pub fn get(&self, e: Element) -> Option<u32> {
        self.entries
            .binary_search_by_key(&e, |&(x, _)| x)
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// `(element, layer)` pairs sorted by element.
    pub fn entries(&self) -> &[(Element, u32)] {
        &self.entries
    }
}

/// Layers of the members of `x` that the `B_i` iteration reaches from `t`,
/// in order of discovery (so layers are non-decreasing).
struct MemberLayers {
    by_layer: SlotVec<(Element, u32)>,
}

impl MemberLayers {
    fn compute(inst: &SetSystemInstance, x: &ElementSet, t: Element) -> Self {
        let mut by_layer = SlotVec::with_capacity(x.len());
        by_layer.push((t, 0));
        let mut reached = ElementSet::singleton(t);
        let mut layer = 0;
        loop {
            layer += 1;
            // the new layer is scanned against the old `reached`, so it is
            // parked in `by_layer` and merged afterwards
            let first_new = by_layer.len();
            for y in x.iter() {
                if !reached.contains(y) && inst.contains(reached.with(y).as_slice()) {
                    by_layer.push((y, layer));
                }
            }
            if by_layer.len() == first_new {
                break;
            }
            for &(y, _) in &by_layer[first_new..] {
                reached.insert(y);
            }
        }
        MemberLayers { by_layer }
    }

    fn max_layer(&self) -> u32 {
        self.by_layer.last().map_or(0, |&(_, l)| l)
    }

    fn layer_of_member(&self, e: Element) -> Option<u32> {
        self.by_layer
            .iter()
            .find(|&&(x, _)| x == e)
            .map(|&(_, l)| l)
    }

    /// Layer of an outside element `y`: the least `i ≥ 1` with
    /// `B_{i-1} ∪ {y} ∈ F`, searched up to `limit`.
    fn layer_of_outsider(&self, inst: &SetSystemInstance, y: Element, limit: u32) -> Option<u32> {
        let cap = limit.min(self.max_layer() + 1);
        (1..=cap).find(|&i| inst.contains(self.prefix_with(i - 1, y).as_slice()))
    }

    /// `B_i ∪ {y}` in a single allocation.
    fn prefix_with(&self, i: u32, y: Element) -> ElementSet {
        self.by_layer
            .iter()
            .take_while(|&&(_, l)| l <= i)
            .map(|&(e, _)| e)
            .chain(std::iter::once(y))
            .collect()
    }
}

/// Picks the next element, or `None` when `X^+_A` is empty.
pub(crate) fn choose_inner(
    inst: &SetSystemInstance,
    x: &ElementSet,
    a: Scope<'_>,
    strat: ChooseStrategy,
    start: Option<Element>,
) -> Option<Element> {
    let start = start.or_else(|| inst.source_unchecked(x));
    match (strat, start) {
        (ChooseStrategy::MinElement, _) | (ChooseStrategy::LayeredMin, None) => {
            inst.candidates(x, a).find(|&y| inst.extends(x, y))
        }
        (ChooseStrategy::LayeredMin, Some(t)) => {
            let layers = MemberLayers::compute(inst, x, t);
            let mut best: Option<(u32, Element)> = None;
            for y in inst.candidates(x, a) {
                // candidates arrive in label order, so a later one must win on layer alone
                let limit = best.map_or(u32::MAX, |(l, _)| l.saturating_sub(1));
                if limit == 0 || !inst.extends(x, y) {
                    continue;
                }
                match layers.layer_of_outsider(inst, y, limit) {
                    Some(l) => best = Some((l, y)),
                    None if best.is_none() => best = Some((u32::MAX, y)),
                    None => {}
                }
            }
            best.map(|(_, y)| y)
        }
    }
}

/// `choose(X, A)`. For [`ChooseStrategy::LayeredMin`], `start` defaults to
/// `source(x)` and must lie in `x ∩ Z`.
pub fn choose(
    inst: &SetSystemInstance,
    x: &ElementSet,
    a: Scope<'_>,
    strat: ChooseStrategy,
    start: Option<Element>,
) -> Result<Element> {
    if !inst.is_solution(x)? {
        return Err(Error::precondition("choose needs x ∈ F"));
    }
    if let Some(t) = start {
        if strat == ChooseStrategy::LayeredMin && !(x.contains(t) && inst.is_good(t)) {
            return Err(Error::precondition(format!("start {t} is not in x ∩ Z")));
        }
    }
    choose_inner(inst, x, a, strat, start).ok_or(Error::NoCandidate)
}

/// Result of a (possibly truncated) `complete` run.
#[derive(Clone, Debug)]
pub struct Completion {
    pub set: ElementSet,
    /// Elements in the order they were added.
    pub added: Vec<Element>,
    /// Whether the run stopped because `choose` returned the stop element.
    pub truncated: bool,
}

pub(crate) fn complete_inner(
    inst: &SetSystemInstance,
    mut x: ElementSet,
    a: Scope<'_>,
    strat: ChooseStrategy,
    stop: Option<Element>,
    mut on_add: impl FnMut(Element),
) -> (ElementSet, bool) {
    // LayeredMin re-derives its start from the current source at every step,
    // so layers follow the source as smaller good elements join.
    while let Some(y) = choose_inner(inst, &x, a, strat, None) {
        if Some(y) == stop {
            return (x, true);
        }
        x.insert(y);
        on_add(y);
    }
    (x, false)
}

/// `complete(X, A)`.
pub fn complete(
    inst: &SetSystemInstance,
    x: &ElementSet,
    a: Scope<'_>,
    strat: ChooseStrategy,
) -> Result<Completion> {
    complete_checked(inst, x, a, strat, None)
}

/// `complete(X, A)|_w`: halts, without adding, the first time `choose`
/// would return `w`.
pub fn complete_truncated(
    inst: &SetSystemInstance,
    x: &ElementSet,
    a: Scope<'_>,
    w: Element,
    strat: ChooseStrategy,
) -> Result<Completion> {
    complete_checked(inst, x, a, strat, Some(w))
}

fn complete_checked(
    inst: &SetSystemInstance,
    x: &ElementSet,
    a: Scope<'_>,
    strat: ChooseStrategy,
    stop: Option<Element>,
) -> Result<Completion> {
    if !inst.is_solution(x)? {
        return Err(Error::precondition("complete needs x ∈ F"));
    }
    if let Scope::Within(a) = a {
        inst.check_range(a)?;
    }
    let mut added = Vec::new();
    let (set, truncated) = complete_inner(inst, x.clone(), a, strat, stop, |y| added.push(y));
    Ok(Completion {
        set,
        added,
        truncated,
    })
}

/// A maximal solution together with its canonical order and the reverse
/// search attributes derived from it.
#[derive(Clone, Debug)]
pub struct CanonicalSolution {
    elements: ElementSet,
    order: SlotVec<Element>,
    layers: Option<Vec<u32>>,
    pi_index: usize,
    strategy: ChooseStrategy,
}

impl CanonicalSolution {
    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn into_elements(self) -> ElementSet {
        self.elements
    }

    /// `s_1, …, s_|S|`.
    pub fn order(&self) -> &[Element] {
        &self.order
    }

    /// Layer of each `s_j` relative to `S` from `s_1`, aligned with
    /// [`order`](Self::order). Present for [`ChooseStrategy::LayeredMin`].
    pub fn layers(&self) -> Option<&[u32]> {
        self.layers.as_deref()
    }

    pub fn strategy(&self) -> ChooseStrategy {
        self.strategy
    }

    pub fn source(&self) -> Element {
        self.order[0]
    }

    pub fn pi(&self) -> Element {
        self.order[self.pi_index]
    }

    /// `S[j-1]` where `s_j = pi(S)`; empty for roots.
    pub fn core(&self) -> ElementSet {
        self.order[..self.pi_index].iter().copied().collect()
    }

    pub fn is_root(&self) -> bool {
        self.pi_index == 0
    }

    /// The canonical order split into layers, e.g. `[[2], [5, 8], [7]]`.
    pub fn layered_order(&self) -> Option<Vec<Vec<Element>>> {
        let layers = self.layers.as_ref()?;
        let mut out: Vec<Vec<Element>> = Vec::new();
        let mut last = None;
        for (&e, &l) in self.order.iter().zip(layers) {
            if last != Some(l) {
                out.push(Vec::new());
                last = Some(l);
            }
            out.last_mut().unwrap().push(e);
        }
        Some(out)
    }
}

/// Canonical order of a maximal `s` plus `pi`/`core`, without validating
/// maximality. Layers are only filled in when `with_layers` is set.
pub(crate) fn canonical_inner(
    inst: &SetSystemInstance,
    s: ElementSet,
    strat: ChooseStrategy,
    with_layers: bool,
) -> CanonicalSolution {
    let source = inst.source_unchecked(&s);
    debug_assert!(
        source.is_some() || s.is_empty(),
        "nonempty member without a good singleton"
    );
    let Some(source) = source else {
        return CanonicalSolution {
            elements: s,
            order: SlotVec::new(),
            layers: None,
            pi_index: 0,
            strategy: strat,
        };
    };

    let mut order = SlotVec::with_capacity(s.len());
    order.push(source);
    let (reached, _) = complete_inner(
        inst,
        ElementSet::singleton(source),
        Scope::Within(&s),
        strat,
        None,
        |y| order.push(y),
    );
    debug_assert_eq!(
        reached, s,
        "complete from the source did not rebuild a maximal solution"
    );
    drop(reached);

    // pi sits right after the longest prefix whose unrestricted choice
    // leaves S; if there is none, complete({source}) = S and S is a root.
    let mut prefix = ElementSet::singleton(source);
    let mut pi_index = 0;
    for j in 1..order.len() {
        if choose_inner(inst, &prefix, Scope::All, strat, Some(source)) != Some(order[j]) {
            pi_index = j;
        }
        prefix.insert(order[j]);
    }
    drop(prefix);

    let layers = (with_layers && strat == ChooseStrategy::LayeredMin).then(|| {
        let members = MemberLayers::compute(inst, &s, source);
        order
            .iter()
            .map(|&e| members.layer_of_member(e).unwrap_or(u32::MAX))
            .collect()
    });

    CanonicalSolution {
        elements: s,
        order,
        layers,
        pi_index,
        strategy: strat,
    }
}

pub(crate) fn check_maximal(inst: &SetSystemInstance, s: &ElementSet, what: &str) -> Result<()> {
    if !inst.is_solution(s)? {
        return Err(Error::precondition(format!(
            "{what}: {s:?} is not a member"
        )));
    }
    if s.is_empty() && inst.good_singletons().is_empty() {
        return Ok(());
    }
    if inst.candidates(s, Scope::All).any(|y| inst.extends(s, y)) {
        return Err(Error::precondition(format!("{what}: {s:?} is not maximal")));
    }
    Ok(())
}

/// Canonical order of the maximal solution `s`.
pub fn canonical_order(
    inst: &SetSystemInstance,
    s: &ElementSet,
    strat: ChooseStrategy,
) -> Result<CanonicalSolution> {
    check_maximal(inst, s, "canonical_order")?;
    if s.is_empty() {
        return Err(Error::precondition(
            "canonical_order: the empty solution has no order",
        ));
    }
    Ok(canonical_inner(inst, s.clone(), strat, true))
}

/// `complete(core(S))`, or `None` for roots.
pub fn parent(inst: &SetSystemInstance, s: &CanonicalSolution) -> Option<ElementSet> {
    if s.is_root() {
        return None;
    }
    Some(parent_inner(inst, s))
}

pub(crate) fn parent_inner(inst: &SetSystemInstance, s: &CanonicalSolution) -> ElementSet {
    complete_inner(inst, s.core(), Scope::All, s.strategy, None, |_| {}).0
}

/// `r(S) = complete(core(S) ∪ {pi(S)}, parent(S) ∪ {pi(S)})`, the
/// restricted-problem solution a child is generated from.
pub fn r_of(inst: &SetSystemInstance, s: &CanonicalSolution) -> Result<ElementSet> {
    if s.strategy != ChooseStrategy::LayeredMin {
        return Err(Error::precondition(
            "r(S) is defined for the layered strategy",
        ));
    }
    if s.is_root() {
        return Err(Error::precondition("r(S) is undefined for roots"));
    }
    let parent = parent_inner(inst, s);
    Ok(r_given_parent(inst, s, &parent))
}

pub(crate) fn r_given_parent(
    inst: &SetSystemInstance,
    s: &CanonicalSolution,
    parent: &ElementSet,
) -> ElementSet {
    let pi = s.pi();
    let domain = parent.with(pi);
    let seed = s.order[..=s.pi_index].iter().copied().collect();
    complete_inner(inst, seed, Scope::Within(&domain), s.strategy, None, |_| {}).0
}

/// Total order on maximal solutions: canonical orders compared
/// lexicographically, as labels for `MinElement` and as `⟨layer, label⟩`
/// pairs for `LayeredMin`.
pub fn compare(
    inst: &SetSystemInstance,
    s: &CanonicalSolution,
    t: &CanonicalSolution,
) -> Result<Ordering> {
    if s.strategy != t.strategy {
        return Err(Error::precondition(
            "compare needs both solutions ordered by the same strategy",
        ));
    }
    Ok(match s.strategy {
        ChooseStrategy::MinElement => s.order().cmp(t.order()),
        ChooseStrategy::LayeredMin => layered_key(inst, s).cmp(&layered_key(inst, t)),
    })
}

fn layered_key(inst: &SetSystemInstance, s: &CanonicalSolution) -> Vec<(u32, Element)> {
    let layers = match s.layers() {
        Some(l) => l.to_vec(),
        None => {
            let members = MemberLayers::compute(inst, &s.elements, s.source());
            s.order()
                .iter()
                .map(|&e| members.layer_of_member(e).unwrap_or(u32::MAX))
                .collect()
        }
    };
    layers.into_iter().zip(s.order().iter().copied()).collect()
}

/// Layers of every element of `x ∪ x^+` relative to `x` from `t`.
pub fn layer_of(inst: &SetSystemInstance, x: &ElementSet, t: Element) -> Result<LayerAssignment> {
    if !inst.is_solution(x)? {
        return Err(Error::precondition("layer_of needs x ∈ F"));
    }
    if !(x.contains(t) && inst.is_good(t)) {
        return Err(Error::precondition(format!("start {t} is not in x ∩ Z")));
    }
    let members = MemberLayers::compute(inst, x, t);
    let mut entries: Vec<(Element, u32)> = members.by_layer.iter().copied().collect();
    for y in inst.extension_unchecked(x, Scope::All).iter() {
        if let Some(l) = members.layer_of_outsider(inst, y, u32::MAX) {
            entries.push((y, l));
        }
    }
    entries.sort_unstable();
    Ok(LayerAssignment { start: t, entries })
}
