//! Cross-checks used by the `verify` command and the test suites: engine
//! outputs against the exhaustive oracle, and the structural invariants
//! the traversal relies on.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::basic::enumerate_basic;
use crate::classify::classify_system;
use crate::element::ElementSet;
use crate::error::Result;
use crate::oracle::brute_force_maximal;
use crate::order::{canonical_order, compare, complete, parent, ChooseStrategy};
use crate::refined::enumerate_refined;
use crate::restricted::RestrictedSolver;
use crate::stateless::stateless_traverse;
use crate::system::{Scope, SetSystemInstance, SystemClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckRow {
    fn new(name: impl Into<String>, outcome: Result<String, String>) -> Self {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CheckRow {
            name: name.into(),
            passed,
            detail,
        }
    }
}

/// Nonempty maximal solutions, the universe the engines enumerate.
pub fn oracle_solutions(inst: &SetSystemInstance) -> Result<BTreeSet<ElementSet>> {
    Ok(brute_force_maximal(inst)?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect())
}

/// Compares an engine's output sequence with the expected set.
pub fn check_output(
    output: &[ElementSet],
    expected: &BTreeSet<ElementSet>,
) -> Result<String, String> {
    let got: BTreeSet<ElementSet> = output.iter().cloned().collect();
    if got.len() != output.len() {
        return Err(format!(
            "{} outputs but only {} distinct",
            output.len(),
            got.len()
        ));
    }
    if let Some(extra) = got.difference(expected).next() {
        return Err(format!("emitted {{{extra}}}, which is not maximal"));
    }
    if let Some(missing) = expected.difference(&got).next() {
        return Err(format!("missed {{{missing}}}"));
    }
    Ok(format!("{} solutions", got.len()))
}

/// Every prefix of the canonical order of `s` is a member.
pub fn check_prefix_closure(
    inst: &SetSystemInstance,
    s: &ElementSet,
    strat: ChooseStrategy,
) -> Result<(), String> {
    let cs = canonical_order(inst, s, strat).map_err(|e| e.to_string())?;
    let mut prefix = ElementSet::new();
    for &e in cs.order() {
        prefix.insert(e);
        if !inst.contains(prefix.as_slice()) {
            return Err(format!("prefix {{{prefix}}} of {{{s}}} is not a member"));
        }
    }
    Ok(())
}

/// `complete(S[j]) ⪯ S` for every prefix `S[j]`.
pub fn check_requirement(
    inst: &SetSystemInstance,
    s: &ElementSet,
    strat: ChooseStrategy,
) -> Result<(), String> {
    let err = |e: crate::Error| e.to_string();
    let cs = canonical_order(inst, s, strat).map_err(err)?;
    let mut prefix = ElementSet::new();
    for &e in cs.order() {
        prefix.insert(e);
        let c = complete(inst, &prefix, Scope::All, strat).map_err(err)?.set;
        let cc = canonical_order(inst, &c, strat).map_err(err)?;
        if compare(inst, &cc, &cs).map_err(err)? == Ordering::Greater {
            return Err(format!(
                "complete({{{prefix}}}) = {{{c}}} comes after {{{s}}}"
            ));
        }
    }
    Ok(())
}

/// Following parents from `s` reaches a root within `limit` steps, each step
/// strictly decreasing in the solution order.
pub fn check_parent_chain(
    inst: &SetSystemInstance,
    s: &ElementSet,
    strat: ChooseStrategy,
    limit: usize,
) -> Result<(), String> {
    let err = |e: crate::Error| e.to_string();
    let mut cur = canonical_order(inst, s, strat).map_err(err)?;
    for _ in 0..=limit {
        let Some(p) = parent(inst, &cur) else {
            return Ok(());
        };
        if p == *cur.elements() {
            return Err(format!("{{{p}}} is its own parent"));
        }
        let cp = canonical_order(inst, &p, strat).map_err(err)?;
        if compare(inst, &cp, &cur).map_err(err)? != Ordering::Less {
            return Err(format!(
                "parent {{{p}}} does not precede {{{}}}",
                cur.elements()
            ));
        }
        cur = cp;
    }
    Err(format!("no root within {limit} steps of {{{s}}}"))
}

/// Every nonempty member meets `Z`, and a member strictly inside another
/// always has a one-step extension towards it.
pub fn check_fact1(inst: &SetSystemInstance, x: &ElementSet, s: &ElementSet) -> Result<(), String> {
    if !x.is_empty() && inst.source(x).is_err() {
        return Err(format!("{{{x}}} has no good singleton"));
    }
    if x.is_subset(s)
        && x != s
        && inst
            .extension_set(x, Scope::Within(s))
            .map_err(|e| e.to_string())?
            .is_empty()
    {
        return Err(format!(
            "{{{x}}} ⊂ {{{s}}} but no element of the difference extends it"
        ));
    }
    Ok(())
}

fn run(
    engine: impl FnOnce(&mut Vec<ElementSet>) -> Result<crate::EnumerationReport>,
) -> Result<Vec<ElementSet>, String> {
    let mut out = Vec::new();
    engine(&mut out).map_err(|e| e.to_string())?;
    Ok(out)
}

/// Runs classification, every applicable engine against the oracle, and the
/// invariant checks on each maximal solution.
pub fn verify_system(
    inst: &SetSystemInstance,
    solver: &dyn RestrictedSolver,
) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let class = classify_system(inst)?;
    let declared = inst.class();
    let class_ok = class.strongly_accessible
        && (!declared.is_commutable() || class.commutable)
        && (declared != SystemClass::Hereditary || class.hereditary)
        && (declared != SystemClass::ConnectedHereditary || class.connected_hereditary_witness);
    let summary = format!(
        "declared {declared}; accessible={} strongly_accessible={} hereditary={} connected_hereditary={} commutable={}",
        class.accessible, class.strongly_accessible, class.hereditary, class.connected_hereditary_witness, class.commutable
    );
    rows.push(CheckRow::new(
        "classification",
        if class_ok {
            Ok(summary)
        } else {
            Err(format!("{summary}; {:?}", class.counterexamples))
        },
    ));

    let expected = oracle_solutions(inst)?;
    for strat in [ChooseStrategy::MinElement, ChooseStrategy::LayeredMin] {
        let out = run(|sink| enumerate_basic(inst, strat, sink));
        rows.push(CheckRow::new(
            format!("basic ({strat:?}) vs oracle"),
            out.and_then(|o| check_output(&o, &expected)),
        ));
    }
    if declared.is_commutable() {
        let refined = run(|sink| enumerate_refined(inst, solver, sink));
        let stateless = run(|sink| stateless_traverse(inst, solver, sink));
        rows.push(CheckRow::new(
            "refined vs oracle",
            refined.clone().and_then(|o| check_output(&o, &expected)),
        ));
        rows.push(CheckRow::new(
            "stateless vs oracle",
            stateless.clone().and_then(|o| check_output(&o, &expected)),
        ));
        rows.push(CheckRow::new(
            "stateless order = refined order",
            match (refined, stateless) {
                (Ok(a), Ok(b)) if a == b => Ok(format!("{} outputs", a.len())),
                (Ok(_), Ok(_)) => Err("sequences differ".into()),
                _ => Err("an engine failed".into()),
            },
        ));
    }

    let strategies: &[ChooseStrategy] = if declared.is_commutable() {
        &[ChooseStrategy::MinElement, ChooseStrategy::LayeredMin]
    } else {
        &[ChooseStrategy::MinElement]
    };
    for &strat in strategies {
        let all = |f: &dyn Fn(&ElementSet) -> Result<(), String>| -> Result<String, String> {
            for s in &expected {
                f(s)?;
            }
            Ok(format!("{} solutions", expected.len()))
        };
        rows.push(CheckRow::new(
            format!("prefix closure ({strat:?})"),
            all(&|s| check_prefix_closure(inst, s, strat)),
        ));
        rows.push(CheckRow::new(
            format!("order monotonicity ({strat:?})"),
            all(&|s| check_requirement(inst, s, strat)),
        ));
        rows.push(CheckRow::new(
            format!("parent chains ({strat:?})"),
            all(&|s| check_parent_chain(inst, s, strat, expected.len())),
        ));
    }
    rows.push(CheckRow::new(
        "good singletons and extensions",
        (|| {
            for s in &expected {
                let cs = canonical_order(inst, s, ChooseStrategy::MinElement)
                    .map_err(|e| e.to_string())?;
                let mut prefix = ElementSet::new();
                check_fact1(inst, &prefix, s)?;
                for &e in cs.order() {
                    prefix.insert(e);
                    check_fact1(inst, &prefix, s)?;
                }
            }
            Ok(format!("{} solutions", expected.len()))
        })(),
    ));
    Ok(rows)
}
