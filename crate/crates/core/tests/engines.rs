//! Engines against the exhaustive oracle and against each other.

mod common;

use std::collections::BTreeSet;

use common::{matrix, Kind, KINDS};
use maxsets::catalog::{clique_system, explicit_system, Graph};
use maxsets::order::ChooseStrategy::{LayeredMin, MinElement};
use maxsets::verify::{check_output, check_parent_chain, oracle_solutions};
use maxsets::{
    canonical_order, children_basic, children_refined, enumerate_basic, enumerate_refined,
    find_roots, next_child, parent, r_of, restr_generic, stateless_traverse, BcCliqueRestricted,
    ChooseStrategy, Element, ElementSet, Error, GenericRestricted, SetSystemInstance,
};

const PER_KIND: u64 = 60;

fn set(labels: &[u32]) -> ElementSet {
    ElementSet::from_labels(labels.iter().copied())
}

#[test]
fn engines_match_oracle() {
    for kind in KINDS {
        for case in matrix(kind, PER_KIND) {
            let expected = oracle_solutions(&case.inst).unwrap();
            for strat in [MinElement, LayeredMin] {
                let mut out = Vec::new();
                enumerate_basic(&case.inst, strat, &mut out).unwrap();
                check_output(&out, &expected)
                    .unwrap_or_else(|e| panic!("basic {strat:?} on {}: {e}", case.label()));
            }
            let solver = case.solver();
            let mut refined = Vec::new();
            enumerate_refined(&case.inst, solver.as_ref(), &mut refined).unwrap();
            check_output(&refined, &expected)
                .unwrap_or_else(|e| panic!("refined on {}: {e}", case.label()));
            let mut stateless = Vec::new();
            stateless_traverse(&case.inst, solver.as_ref(), &mut stateless).unwrap();
            assert_eq!(refined, stateless, "stateless order on {}", case.label());
        }
    }
}

/// All children of `p` according to the oracle, i.e. maximal `S` with
/// `parent(S) = p`, grouped by `pi`.
fn children_by_parent(
    inst: &SetSystemInstance,
    strat: ChooseStrategy,
    all: &BTreeSet<ElementSet>,
    p: &ElementSet,
) -> Vec<(Element, ElementSet)> {
    all.iter()
        .filter_map(|s| {
            let cs = canonical_order(inst, s, strat).unwrap();
            (parent(inst, &cs).as_ref() == Some(p)).then(|| (cs.pi(), s.clone()))
        })
        .collect()
}

#[test]
fn basic_children_partition_by_pi() {
    for kind in KINDS {
        for case in matrix(kind, 25) {
            let all = oracle_solutions(&case.inst).unwrap();
            for strat in [MinElement, LayeredMin] {
                for p in &all {
                    let mut expected = children_by_parent(&case.inst, strat, &all, p);
                    expected.sort();
                    let mut got = Vec::new();
                    for w in case.inst.elements() {
                        for s in children_basic(&case.inst, p, w, strat).unwrap() {
                            got.push((w, s));
                        }
                    }
                    got.sort();
                    assert_eq!(
                        got,
                        expected,
                        "{strat:?} children of {{{p}}} on {}",
                        case.label()
                    );
                }
            }
        }
    }
}

#[test]
fn pi_can_lie_in_the_parent_under_min_order() {
    let case = common::case(Kind::BcClique, 5);
    let s = set(&[2, 6, 11]);
    let cs = canonical_order(&case.inst, &s, MinElement).unwrap();
    let p = parent(&case.inst, &cs).unwrap();
    assert_eq!(p, set(&[2, 9, 11]));
    assert!(p.contains(cs.pi()));
    assert_eq!(
        children_basic(&case.inst, &p, cs.pi(), MinElement).unwrap(),
        vec![s]
    );
}

#[test]
fn refined_children_equal_basic_children() {
    for kind in KINDS {
        for case in matrix(kind, 40) {
            let solver = case.solver();
            for p in oracle_solutions(&case.inst).unwrap() {
                for w in case.inst.elements() {
                    let basic: BTreeSet<ElementSet> = children_basic(&case.inst, &p, w, LayeredMin)
                        .unwrap()
                        .into_iter()
                        .collect();
                    let refined = children_refined(&case.inst, &p, w, solver.as_ref()).unwrap();
                    let refined_set: BTreeSet<ElementSet> = refined.iter().cloned().collect();
                    assert_eq!(
                        refined.len(),
                        refined_set.len(),
                        "duplicate child on {}",
                        case.label()
                    );
                    assert_eq!(
                        basic,
                        refined_set,
                        "children of {{{p}}} via {w} on {}",
                        case.label()
                    );
                    if p.contains(w) {
                        assert!(refined.is_empty() && basic.is_empty());
                    }
                }
            }
        }
    }
}

#[test]
fn children_are_reached_from_their_own_tuple() {
    // backtracking rebuilds (parent, pi, r) from the child alone; that tuple
    // must be one the child is generated under
    for kind in KINDS {
        for case in matrix(kind, 40) {
            let solver = case.solver();
            for d in oracle_solutions(&case.inst).unwrap() {
                let cs = canonical_order(&case.inst, &d, LayeredMin).unwrap();
                let Some(p) = parent(&case.inst, &cs) else {
                    continue;
                };
                let w = cs.pi();
                assert!(!p.contains(w), "pi in parent on {}", case.label());
                let r = r_of(&case.inst, &cs).unwrap();
                assert_ne!(r, p);
                assert!(r.contains(w));
                let stream = solver.solve_all(&case.inst, &p, w).unwrap();
                assert!(
                    stream.contains(&r),
                    "r not among restricted solutions on {}",
                    case.label()
                );
                let mut prev: Option<ElementSet> = None;
                let mut found = false;
                while let Some(c) = next_child(&case.inst, &p, w, &r, prev.as_ref()) {
                    found |= c == d;
                    prev = Some(c);
                }
                assert!(
                    found,
                    "{{{d}}} not generated from its own tuple on {}",
                    case.label()
                );
            }
        }
    }
}

#[test]
fn parent_chains_reach_roots() {
    for kind in KINDS {
        for case in matrix(kind, 30) {
            let all = oracle_solutions(&case.inst).unwrap();
            for strat in [MinElement, LayeredMin] {
                for s in &all {
                    check_parent_chain(&case.inst, s, strat, all.len()).unwrap();
                }
            }
        }
    }
}

#[test]
fn candidates_per_restricted_solution_are_bounded() {
    for kind in KINDS {
        for case in matrix(kind, 40) {
            let solver = case.solver();
            let report = enumerate_refined(&case.inst, solver.as_ref(), &mut Vec::new()).unwrap();
            // each restricted solution R lies in P ∪ {w}, so |R| - 1 <= q
            assert!(report.max_candidates_per_restricted <= report.max_solution_size);
            let mut worst = 0;
            for p in oracle_solutions(&case.inst).unwrap() {
                for w in case.inst.elements().filter(|w| !p.contains(*w)) {
                    for r in solver.solve_all(&case.inst, &p, w).unwrap() {
                        let candidates =
                            r.iter().filter(|&s| s != w && case.inst.is_good(s)).count();
                        assert!(candidates < r.len());
                        worst = worst.max(candidates);
                    }
                }
            }
            assert!(report.max_candidates_per_restricted <= worst);
        }
    }
}

#[test]
fn roots_come_from_their_own_source() {
    for case in matrix(Kind::Independent, 30) {
        let expected: BTreeSet<ElementSet> = oracle_solutions(&case.inst)
            .unwrap()
            .into_iter()
            .filter(|s| {
                let src = case.inst.source(s).unwrap();
                maxsets::complete(
                    &case.inst,
                    &ElementSet::singleton(src),
                    maxsets::Scope::All,
                    MinElement,
                )
                .unwrap()
                .set == *s
            })
            .collect();
        let roots: Vec<ElementSet> = find_roots(&case.inst, MinElement).collect();
        assert_eq!(roots.iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert_eq!(roots.len(), expected.len());
    }
}

#[test]
fn only_empty_family() {
    let inst = explicit_system(4, &[])
        .unwrap()
        .declared(maxsets::SystemClass::Hereditary);
    let mut out = Vec::new();
    let report = enumerate_basic(&inst, MinElement, &mut out).unwrap();
    assert!(out.is_empty());
    assert_eq!(report.solution_count, 0);
    assert_eq!(find_roots(&inst, MinElement).count(), 0);
    let report = stateless_traverse(&inst, &GenericRestricted::default(), &mut out).unwrap();
    assert_eq!(report.solution_count, 0);
}

#[test]
fn single_solution() {
    let inst = clique_system(&Graph::complete(5));
    let mut out = Vec::new();
    let report = stateless_traverse(&inst, &GenericRestricted::default(), &mut out).unwrap();
    assert_eq!(out, vec![set(&[1, 2, 3, 4, 5])]);
    assert_eq!(report.solution_count, 1);
    assert!(maxsets::is_root(&inst, &out[0]).unwrap());
    let mut out = Vec::new();
    enumerate_refined(&inst, &GenericRestricted::default(), &mut out).unwrap();
    assert_eq!(out.len(), 1);
}

fn non_commutable() -> SetSystemInstance {
    let members: Vec<ElementSet> = [
        &[1][..],
        &[1, 2],
        &[1, 3],
        &[1, 2, 4],
        &[1, 3, 4],
        &[1, 2, 3, 4],
    ]
    .iter()
    .map(|s| set(s))
    .collect();
    explicit_system(4, &members).unwrap()
}

#[test]
fn refined_engines_refuse_non_commutable_systems() {
    let inst = non_commutable();
    let solver = GenericRestricted::default();
    assert!(matches!(
        enumerate_refined(&inst, &solver, &mut Vec::new()),
        Err(Error::NotCommutable { .. })
    ));
    assert!(matches!(
        stateless_traverse(&inst, &solver, &mut Vec::new()),
        Err(Error::NotCommutable { .. })
    ));
    assert!(matches!(
        children_refined(&inst, &set(&[1, 2, 3, 4]), Element(2), &solver),
        Err(Error::NotCommutable { .. })
    ));
    let mut out = Vec::new();
    enumerate_basic(&inst, MinElement, &mut out).unwrap();
    assert_eq!(out, vec![set(&[1, 2, 3, 4])]);
}

#[test]
fn sink_failure_stops_with_partial_report() {
    let inst = maxsets::catalog::bcclique_system(maxsets::catalog::fig1());
    let mut seen = 0;
    let mut sink = |_: &ElementSet, _: usize| -> Result<(), maxsets::error::SinkError> {
        seen += 1;
        if seen == 2 {
            Err("disk full".into())
        } else {
            Ok(())
        }
    };
    match enumerate_refined(
        &inst,
        &BcCliqueRestricted::new(maxsets::catalog::fig1()),
        &mut sink,
    ) {
        Err(Error::Sink { partial, source }) => {
            assert_eq!(partial.solution_count, 2);
            assert_eq!(source.to_string(), "disk full");
        }
        other => panic!("expected a sink error, got {other:?}"),
    }
}

#[test]
fn reports_and_depths() {
    for case in matrix(Kind::BcClique, 20) {
        let solver = case.solver();
        let mut depths = Vec::new();
        let mut sink = |_: &ElementSet, d: usize| -> Result<(), maxsets::error::SinkError> {
            depths.push(d);
            Ok(())
        };
        let report = stateless_traverse(&case.inst, solver.as_ref(), &mut sink).unwrap();
        assert_eq!(report.delay_samples_ns.len() as u64, report.solution_count);
        assert_eq!(depths.len() as u64, report.solution_count);
        assert!(depths.iter().all(|&d| d >= 1));
        assert!(report.oracle_calls > 0 || report.solution_count == 0);
        let roots = find_roots(&case.inst, LayeredMin).count();
        assert_eq!(depths.iter().filter(|&&d| d == 1).count(), roots);
    }
}

#[test]
fn restricted_generic_on_unique_maximum() {
    // P is the only maximal set of P ∪ {w} when w conflicts with everything
    let g = Graph::from_edges(4, &[(1, 2), (2, 3), (1, 3)]).unwrap();
    let inst = clique_system(&g);
    assert!(restr_generic(&inst, &set(&[1, 2, 3]), Element(4)).unwrap() == vec![set(&[4])]);
    let k = clique_system(&Graph::complete(3));
    assert!(restr_generic(&k, &set(&[1, 2, 3]), Element(2))
        .unwrap()
        .is_empty());
}
