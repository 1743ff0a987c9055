//! Reverse search for commutable systems, with children generated from the
//! solutions of the restricted problem.

use crate::basic::{find_roots, spawn};
use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::order::{
    canonical_inner, check_maximal, complete_inner, parent_inner, r_given_parent, ChooseStrategy,
};
use crate::report::{EnumerationReport, Recorder, Sink};
use crate::restricted::RestrictedSolver;
use crate::system::{Scope, SetSystemInstance};

const LAYERED: ChooseStrategy = ChooseStrategy::LayeredMin;

pub(crate) fn ensure_commutable(inst: &SetSystemInstance) -> Result<()> {
    if inst.class().is_commutable() {
        Ok(())
    } else {
        Err(Error::NotCommutable {
            name: inst.name().to_string(),
            class: inst.class().to_string(),
        })
    }
}

/// The next child `D` of `p` with `pi(D) = w`, `r(D) = r` and
/// `source(D) > after`, scanning sources in ascending order.
/// `candidates` is bumped once per completed candidate.
pub(crate) fn next_child_from(
    inst: &SetSystemInstance,
    p: &ElementSet,
    w: Element,
    r: &ElementSet,
    after: Option<Element>,
    candidates: &mut usize,
) -> Option<ElementSet> {
    for s in r.iter() {
        if s == w || !inst.is_good(s) || after.is_some_and(|a| s <= a) {
            continue;
        }
        let (mut seed, truncated) = complete_inner(
            inst,
            ElementSet::singleton(s),
            Scope::Within(r),
            LAYERED,
            Some(w),
            |_| {},
        );
        if !truncated {
            continue;
        }
        *candidates += 1;
        seed.insert(w);
        let (d, _) = complete_inner(inst, seed, Scope::All, LAYERED, None, |_| {});
        if inst.source_unchecked(&d) != Some(s) {
            continue;
        }
        let cs = canonical_inner(inst, d, LAYERED, false);
        if cs.is_root() || cs.pi() != w {
            continue;
        }
        if parent_inner(inst, &cs) != *p {
            continue;
        }
        // parent(D) = P is settled, so r(D) can be completed inside P ∪ {w}
        if r_given_parent(inst, &cs, p) == *r {
            return Some(cs.into_elements());
        }
    }
    None
}

fn children_refined_inner(
    rec: Option<&mut Recorder<'_>>,
    inst: &SetSystemInstance,
    p: &ElementSet,
    w: Element,
    solver: &dyn RestrictedSolver,
) -> Result<Vec<ElementSet>> {
    let mut out = Vec::new();
    if p.contains(w) {
        return Ok(out);
    }
    let mut rec = rec;
    if let Some(rec) = rec.as_deref_mut() {
        rec.note_restricted_call();
    }
    let mut r = solver.next_solution(inst, p, w, None)?;
    while let Some(current) = r {
        let mut candidates = 0;
        let mut after = None;
        while let Some(d) = next_child_from(inst, p, w, &current, after, &mut candidates) {
            after = inst.source_unchecked(&d);
            out.push(d);
        }
        if let Some(rec) = rec.as_deref_mut() {
            rec.note_restricted_solution(candidates);
        }
        r = solver.next_solution(inst, p, w, Some(&current))?;
    }
    Ok(out)
}

/// Children `S` of the maximal `p` with `pi(S) = w`, in order of their
/// restricted solution and then of their source.
pub fn children_refined(
    inst: &SetSystemInstance,
    p: &ElementSet,
    w: Element,
    solver: &dyn RestrictedSolver,
) -> Result<Vec<ElementSet>> {
    ensure_commutable(inst)?;
    check_maximal(inst, p, "children_refined")?;
    inst.check_range(&ElementSet::singleton(w))?;
    children_refined_inner(None, inst, p, w, solver)
}

/// Lists every nonempty maximal solution of a commutable system exactly
/// once, using the layered strategy.
pub fn enumerate_refined(
    inst: &SetSystemInstance,
    solver: &dyn RestrictedSolver,
    sink: &mut dyn Sink,
) -> Result<EnumerationReport> {
    ensure_commutable(inst)?;
    let mut rec = Recorder::new(inst, "refined", sink);
    let mut children = |rec: &mut Recorder<'_>, p: &ElementSet, w: Element| {
        children_refined_inner(Some(rec), inst, p, w, solver)
    };
    for root in find_roots(inst, LAYERED) {
        spawn(&mut rec, inst, &root, 1, &mut children)?;
    }
    Ok(rec.finish())
}
