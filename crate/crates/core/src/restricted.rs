//! Solvers for the restricted problem: given a maximal `P` and `w ∉ P`, list
//! the maximal members of `F` inside `P ∪ {w}` other than `P`.

use std::sync::Arc;

use crate::catalog::BiColoredGraph;
use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::gauge::SlotVec;
use crate::system::{Scope, SetSystemInstance};

/// Default bound on `|P ∪ {w}|` for [`GenericRestricted`].
pub const RESTRICTED_GUARD: usize = 24;

/// A deterministic, restartable stream of restricted solutions.
///
/// `next_solution(.., None)` returns the first solution and
/// `next_solution(.., Some(r))` the one following `r`, so a caller can resume
/// the stream holding nothing but the last solution it saw.
pub trait RestrictedSolver: Send + Sync {
    fn name(&self) -> &str;

    fn next_solution(
        &self,
        inst: &SetSystemInstance,
        p: &ElementSet,
        w: Element,
        after: Option<&ElementSet>,
    ) -> Result<Option<ElementSet>>;

    /// The whole stream, collected.
    fn solve_all(
        &self,
        inst: &SetSystemInstance,
        p: &ElementSet,
        w: Element,
    ) -> Result<Vec<ElementSet>> {
        let mut out: Vec<ElementSet> = Vec::new();
        while let Some(r) = self.next_solution(inst, p, w, out.last())? {
            out.push(r);
        }
        Ok(out)
    }
}

/// Exhaustive solver that works for any system. Subsets of `P ∪ {w}` are
/// visited in ascending order of their bitmask over the sorted ground set.
#[derive(Clone, Copy, Debug)]
pub struct GenericRestricted {
    pub guard: usize,
}

impl Default for GenericRestricted {
    fn default() -> Self {
        GenericRestricted {
            guard: RESTRICTED_GUARD,
        }
    }
}

impl RestrictedSolver for GenericRestricted {
    fn name(&self) -> &str {
        "generic"
    }

    fn next_solution(
        &self,
        inst: &SetSystemInstance,
        p: &ElementSet,
        w: Element,
        after: Option<&ElementSet>,
    ) -> Result<Option<ElementSet>> {
        if p.contains(w) {
            return Ok(None);
        }
        let ground = p.with(w);
        if ground.len() > self.guard.min(63) {
            return Err(Error::TooLarge {
                what: "restricted ground set",
                size: ground.len(),
                guard: self.guard.min(63),
            });
        }
        let first = match after {
            None => 1,
            Some(r) => {
                let m = ground
                    .mask_of(r)
                    .ok_or_else(|| Error::precondition("resume point is not inside P ∪ {w}"))?;
                m + 1
            }
        };
        let p_mask = ground.mask_of(p).expect("P is inside P ∪ {w}");
        for mask in first..1u64 << ground.len() {
            if mask == p_mask {
                continue;
            }
            let x = ground.subset_by_mask(mask);
            if inst.contains(x.as_slice())
                && !inst
                    .candidates(&x, Scope::Within(&ground))
                    .any(|y| inst.extends(&x, y))
            {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

/// Restricted solutions of [`GenericRestricted`], collected.
pub fn restr_generic(
    inst: &SetSystemInstance,
    p: &ElementSet,
    w: Element,
) -> Result<Vec<ElementSet>> {
    inst.check_range(&p.with(w))?;
    GenericRestricted::default().solve_all(inst, p, w)
}

/// Solver for BC-cliques of a fixed graph.
///
/// Every maximal BC-clique of `P ∪ {w}` other than `P` contains `w`, so it
/// lies within `w` plus its neighbours in `P`; those form a clique, and the
/// only candidate is the black component of `w` there.
#[derive(Clone, Debug)]
pub struct BcCliqueRestricted {
    graph: Arc<BiColoredGraph>,
}

impl BcCliqueRestricted {
    pub fn new(graph: impl Into<Arc<BiColoredGraph>>) -> Self {
        BcCliqueRestricted {
            graph: graph.into(),
        }
    }

    fn solve(&self, p: &ElementSet, w: Element) -> Result<Option<ElementSet>> {
        if p.contains(w) {
            return Ok(None);
        }
        let n = self.graph.node_count();
        let outside = |e: Element| e.0 == 0 || e.0 as usize > n;
        if outside(w) || p.iter().any(outside) {
            return Err(Error::precondition("restricted input is outside the graph"));
        }
        if !self.graph.is_bc_clique(p.as_slice()) {
            return Err(Error::precondition("P is not a BC-clique"));
        }
        let mut component = SlotVec::with_capacity(p.len() + 1);
        component.push(w);
        let mut i = 0;
        while i < component.len() {
            let u = component[i];
            for v in p.iter() {
                if self.graph.adjacent(w.0, v.0)
                    && self.graph.is_black(u.0, v.0)
                    && !component.contains(&v)
                {
                    component.push(v);
                }
            }
            i += 1;
        }
        let mut items = component.into_vec();
        items.sort_unstable();
        Ok(Some(ElementSet::from_sorted_vec(items)))
    }
}

impl RestrictedSolver for BcCliqueRestricted {
    fn name(&self) -> &str {
        "bcclique"
    }

    fn next_solution(
        &self,
        _inst: &SetSystemInstance,
        p: &ElementSet,
        w: Element,
        after: Option<&ElementSet>,
    ) -> Result<Option<ElementSet>> {
        if after.is_some() {
            return Ok(None);
        }
        self.solve(p, w)
    }
}

/// Restricted solutions of [`BcCliqueRestricted`], collected.
pub fn restr_bcclique(
    graph: &BiColoredGraph,
    p: &ElementSet,
    w: Element,
) -> Result<Vec<ElementSet>> {
    Ok(BcCliqueRestricted::new(graph.clone())
        .solve(p, w)?
        .into_iter()
        .collect())
}
