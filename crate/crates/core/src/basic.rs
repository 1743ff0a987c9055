//! Reverse search for any strongly accessible system: children are found by
//! trying every subset of the parent as a core.

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::order::{canonical_inner, check_maximal, complete_inner, parent_inner, ChooseStrategy};
use crate::report::{EnumerationReport, Recorder, Sink};
use crate::system::{Scope, SetSystemInstance};

/// Largest `|P \ {w}|` whose subsets [`children_basic`] will scan.
pub const BASIC_SUBSET_GUARD: usize = 24;

/// The first root whose source is greater than `after`.
pub(crate) fn next_root(
    inst: &SetSystemInstance,
    strat: ChooseStrategy,
    after: Option<Element>,
) -> Option<ElementSet> {
    inst.elements()
        .filter(|&z| after.is_none_or(|a| z > a) && inst.is_good(z))
        .find_map(|z| {
            let (s, _) = complete_inner(
                inst,
                ElementSet::singleton(z),
                Scope::All,
                strat,
                None,
                |_| {},
            );
            if inst.source_unchecked(&s) != Some(z) {
                return None;
            }
            let cs = canonical_inner(inst, s, strat, false);
            cs.is_root().then(|| cs.into_elements())
        })
}

/// Roots of the reverse-search forest, each produced from its own source in
/// ascending order of source.
pub fn find_roots(
    inst: &SetSystemInstance,
    strat: ChooseStrategy,
) -> impl Iterator<Item = ElementSet> + '_ {
    let mut after = None;
    std::iter::from_fn(move || {
        let root = next_root(inst, strat, after)?;
        after = inst.source_unchecked(&root);
        Some(root)
    })
}

/// Children `S` of the maximal `p` with `pi(S) = w`.
pub fn children_basic(
    inst: &SetSystemInstance,
    p: &ElementSet,
    w: Element,
    strat: ChooseStrategy,
) -> Result<Vec<ElementSet>> {
    check_maximal(inst, p, "children_basic")?;
    inst.check_range(&ElementSet::singleton(w))?;
    children_basic_inner(inst, p, w, strat)
}

fn children_basic_inner(
    inst: &SetSystemInstance,
    p: &ElementSet,
    w: Element,
    strat: ChooseStrategy,
) -> Result<Vec<ElementSet>> {
    // w may lie in P: under the min-label order a child's pi can belong to
    // its parent
    let base = p.difference(&ElementSet::singleton(w));
    if base.len() > BASIC_SUBSET_GUARD {
        return Err(Error::TooLarge {
            what: "parent solution",
            size: base.len(),
            guard: BASIC_SUBSET_GUARD,
        });
    }
    let mut out = Vec::new();
    for mask in 1u64..1 << base.len() {
        let x = base.subset_by_mask(mask);
        let seed = x.with(w);
        if !inst.contains(seed.as_slice()) {
            continue;
        }
        let (s, _) = complete_inner(inst, seed, Scope::All, strat, None, |_| {});
        let cs = canonical_inner(inst, s, strat, false);
        if cs.is_root() || cs.pi() != w || cs.core() != x {
            continue;
        }
        if parent_inner(inst, &cs) == *p {
            out.push(cs.into_elements());
        }
    }
    Ok(out)
}

/// Children of a node under a given `w`.
pub(crate) type ChildrenFn<'f> =
    dyn FnMut(&mut Recorder<'_>, &ElementSet, Element) -> Result<Vec<ElementSet>> + 'f;

/// Depth-first traversal from every root. Nodes at odd depth are output
/// before their children and nodes at even depth after them.
pub(crate) fn spawn(
    rec: &mut Recorder<'_>,
    inst: &SetSystemInstance,
    x: &ElementSet,
    depth: usize,
    children: &mut ChildrenFn<'_>,
) -> Result<()> {
    if depth % 2 == 1 {
        rec.emit(x, depth)?;
    }
    for w in inst.elements() {
        for child in children(rec, x, w)? {
            spawn(rec, inst, &child, depth + 1, children)?;
        }
    }
    if depth % 2 == 0 {
        rec.emit(x, depth)?;
    }
    Ok(())
}

/// Lists every nonempty maximal solution exactly once.
pub fn enumerate_basic(
    inst: &SetSystemInstance,
    strat: ChooseStrategy,
    sink: &mut dyn Sink,
) -> Result<EnumerationReport> {
    let mut rec = Recorder::new(inst, "basic", sink);
    let mut children =
        |_: &mut Recorder<'_>, p: &ElementSet, w: Element| children_basic_inner(inst, p, w, strat);
    for root in find_roots(inst, strat) {
        spawn(&mut rec, inst, &root, 1, &mut children)?;
    }
    Ok(rec.finish())
}
