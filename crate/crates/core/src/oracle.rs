//! Exhaustive ground truth for tiny instances.

use std::collections::BTreeSet;

use crate::element::ElementSet;
use crate::error::{Error, Result};
use crate::system::SetSystemInstance;

pub const ORACLE_GUARD: usize = 16;

/// Membership of every subset, indexed by bitmask (bit `i` is element
/// `i + 1`).
pub(crate) fn membership_table(
    inst: &SetSystemInstance,
    guard: usize,
    what: &'static str,
) -> Result<Vec<bool>> {
    let n = inst.size();
    if n > guard {
        return Err(Error::TooLarge {
            what,
            size: n,
            guard,
        });
    }
    let all = ElementSet::from_labels(1..=n as u32);
    Ok((0u64..1 << n)
        .map(|mask| inst.contains(all.subset_by_mask(mask).as_slice()))
        .collect())
}

/// `up[m]`: some member contains `m`.
pub(crate) fn superset_table(member: &[bool], n: usize) -> Vec<bool> {
    let mut up = member.to_vec();
    for bit in 0..n {
        for m in (0..up.len()).rev() {
            if m >> bit & 1 == 0 && up[m | 1 << bit] {
                up[m] = true;
            }
        }
    }
    up
}

fn set_of(mask: usize) -> ElementSet {
    ElementSet::from_labels(
        (0..usize::BITS)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i + 1),
    )
}

fn maximal_masks(inst: &SetSystemInstance, guard: usize) -> Result<Vec<usize>> {
    let n = inst.size();
    let member = membership_table(inst, guard, "ground set")?;
    let up = superset_table(&member, n);
    Ok((0..member.len())
        .filter(|&m| member[m] && (0..n).all(|b| m >> b & 1 == 1 || !up[m | 1 << b]))
        .collect())
}

/// Every maximal member of `F`. The empty set appears only when `F = {∅}`.
pub fn brute_force_maximal(inst: &SetSystemInstance) -> Result<BTreeSet<ElementSet>> {
    brute_force_maximal_with_guard(inst, ORACLE_GUARD)
}

pub fn brute_force_maximal_with_guard(
    inst: &SetSystemInstance,
    guard: usize,
) -> Result<BTreeSet<ElementSet>> {
    Ok(maximal_masks(inst, guard)?
        .into_iter()
        .map(set_of)
        .collect())
}

/// The lexicographically smallest maximal member containing `x`.
pub fn lexmin_complete(inst: &SetSystemInstance, x: &ElementSet) -> Result<ElementSet> {
    if !inst.is_solution(x)? {
        return Err(Error::precondition("lexmin_complete needs x ∈ F"));
    }
    brute_force_maximal(inst)?
        .into_iter()
        .filter(|s| x.is_subset(s))
        .min()
        .ok_or_else(|| Error::Invariant(format!("no maximal member contains {x}")))
}
