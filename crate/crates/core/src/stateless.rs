//! Reverse search without a recursion stack. The whole traversal position
//! is the tuple `(P, S, w, R)`; backtracking rebuilds the parent's position
//! from the child alone.

use serde::{Deserialize, Serialize};

use crate::basic::next_root;
use crate::element::{Element, ElementSet};
use crate::error::Result;
use crate::gauge::Meter;
use crate::order::{
    canonical_inner, canonical_order, parent_inner, r_given_parent, ChooseStrategy,
};
use crate::refined::{ensure_commutable, next_child_from};
use crate::report::{EnumerationReport, Recorder, Sink};
use crate::restricted::RestrictedSolver;
use crate::system::SetSystemInstance;

const LAYERED: ChooseStrategy = ChooseStrategy::LayeredMin;

/// Position of a stateless traversal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraversalState {
    /// Current node.
    pub p: ElementSet,
    /// Last child of `p` visited under the current `(w, r)`.
    pub s: Option<ElementSet>,
    /// Current `pi` candidate.
    pub w: Option<Element>,
    /// Current restricted solution.
    pub r: Option<ElementSet>,
}

impl TraversalState {
    pub fn at(p: ElementSet) -> Self {
        TraversalState {
            p,
            ..Default::default()
        }
    }
}

/// Successor of `w` in label order; the first element for `None`.
pub fn next_node(inst: &SetSystemInstance, w: Option<Element>) -> Option<Element> {
    let next = w.map_or(1, |e| e.0 + 1);
    (next as usize <= inst.size()).then_some(Element(next))
}

/// The restricted solution following `r` (the first for `None`).
pub fn next_r(
    inst: &SetSystemInstance,
    solver: &dyn RestrictedSolver,
    p: &ElementSet,
    w: Element,
    r: Option<&ElementSet>,
) -> Result<Option<ElementSet>> {
    solver.next_solution(inst, p, w, r)
}

/// The next child generated from `(p, w, r)` whose source exceeds the source
/// of `s_prev` (any source for `None`).
pub fn next_child(
    inst: &SetSystemInstance,
    p: &ElementSet,
    w: Element,
    r: &ElementSet,
    s_prev: Option<&ElementSet>,
) -> Option<ElementSet> {
    let after = s_prev.and_then(|s| inst.source_unchecked(s));
    next_child_from(inst, p, w, r, after, &mut 0)
}

/// Whether the maximal `x` is a root under the layered order, i.e.
/// `pi(x) = source(x)`.
pub fn is_root(inst: &SetSystemInstance, x: &ElementSet) -> Result<bool> {
    Ok(canonical_order(inst, x, LAYERED)?.is_root())
}

/// Moves `st` to its next child, or returns `None` once `st.p` has none left.
fn advance(
    inst: &SetSystemInstance,
    solver: &dyn RestrictedSolver,
    st: &mut TraversalState,
    rec: &mut Recorder<'_>,
) -> Result<Option<ElementSet>> {
    loop {
        if let (Some(w), Some(r)) = (st.w, st.r.as_ref()) {
            if let Some(d) = next_child(inst, &st.p, w, r, st.s.as_ref()) {
                return Ok(Some(d));
            }
            st.s = None;
            let next = next_r(inst, solver, &st.p, w, Some(r))?;
            if next.is_some() {
                rec.note_restricted_solution(0);
            }
            st.r = next;
            continue;
        }
        st.s = None;
        let Some(w) = next_node(inst, st.w) else {
            return Ok(None);
        };
        st.w = Some(w);
        if st.p.contains(w) {
            continue;
        }
        rec.note_restricted_call();
        st.r = next_r(inst, solver, &st.p, w, None)?;
        if st.r.is_some() {
            rec.note_restricted_solution(0);
        }
    }
}

/// Same output, in the same order, as
/// [`enumerate_refined`](crate::enumerate_refined), holding only a
/// [`TraversalState`] between steps. The report includes the peak number of
/// element slots the traversal held.
pub fn stateless_traverse(
    inst: &SetSystemInstance,
    solver: &dyn RestrictedSolver,
    sink: &mut dyn Sink,
) -> Result<EnumerationReport> {
    ensure_commutable(inst)?;
    let mut rec = Recorder::new(inst, "stateless", sink);
    let meter = Meter::start();

    // debug builds keep an unmetered trail of the tuples children were
    // generated under, to check that backtracking reconstructs them
    #[cfg(debug_assertions)]
    let mut trail: Vec<(ElementSet, Element, ElementSet)> = Vec::new();

    let mut root_source = None;
    while let Some(root) = next_root(inst, LAYERED, root_source) {
        root_source = inst.source_unchecked(&root);
        let mut st = TraversalState::at(root);
        let mut depth = 1;
        rec.emit(&st.p, depth)?;
        loop {
            if let Some(child) = advance(inst, solver, &mut st, &mut rec)? {
                #[cfg(debug_assertions)]
                crate::gauge::paused(|| {
                    trail.push((st.p.clone(), st.w.unwrap(), st.r.clone().unwrap()));
                });
                st = TraversalState::at(child);
                depth += 1;
                if depth % 2 == 1 {
                    rec.emit(&st.p, depth)?;
                }
                continue;
            }
            if depth % 2 == 0 {
                rec.emit(&st.p, depth)?;
            }
            if depth == 1 {
                debug_assert!(canonical_inner(inst, st.p.clone(), LAYERED, false).is_root());
                break;
            }
            let cs = canonical_inner(inst, std::mem::take(&mut st.p), LAYERED, false);
            let parent = parent_inner(inst, &cs);
            let r = r_given_parent(inst, &cs, &parent);
            let w = cs.pi();
            #[cfg(debug_assertions)]
            {
                let (p0, w0, r0) = trail.pop().expect("trail has an entry per descent");
                assert!(
                    p0 == parent && w0 == w && r0 == r,
                    "backtracking from {} rebuilt ({parent}, {w}, {r}), generated under ({p0}, {w0}, {r0})",
                    cs.elements()
                );
            }
            st = TraversalState {
                p: parent,
                s: Some(cs.into_elements()),
                w: Some(w),
                r: Some(r),
            };
            depth -= 1;
        }
    }

    let peak = meter.peak();
    drop(meter);
    let mut report = rec.finish();
    report.peak_aux_elements = Some(peak);
    Ok(report)
}
