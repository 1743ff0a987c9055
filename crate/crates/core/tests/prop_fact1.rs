//! Nonempty members meet the good singletons, and a member strictly inside
//! another has a one-step extension towards it.

mod common;

use common::{rng, KINDS, MATRIX_SIZE};
use maxsets::verify::{check_fact1, oracle_solutions};
use maxsets::ElementSet;
use rand::Rng;

/// Solutions up to this size have every subset checked; larger ones get
/// `SAMPLED_SUBSETS` random subsets.
const EXHAUSTIVE_UP_TO: usize = 8;
const SAMPLED_SUBSETS: usize = 256;

#[test]
fn members_meet_z_and_extend_towards_supersets() {
    let mut pairs = 0u64;
    for kind in KINDS {
        for case in common::matrix(kind, MATRIX_SIZE) {
            let mut r = rng(case.seed + 11);
            for s in oracle_solutions(&case.inst).unwrap() {
                let masks: Vec<u64> = if s.len() <= EXHAUSTIVE_UP_TO {
                    (0..1u64 << s.len()).collect()
                } else {
                    (0..SAMPLED_SUBSETS)
                        .map(|_| r.gen_range(0..1u64 << s.len()))
                        .collect()
                };
                for mask in masks {
                    let x: ElementSet = s.subset_by_mask(mask);
                    if !case.inst.is_solution(&x).unwrap() {
                        continue;
                    }
                    if let Err(msg) = check_fact1(&case.inst, &x, &s) {
                        panic!("{}: {msg}", case.label());
                    }
                    pairs += 1;
                }
            }
        }
    }
    assert!(pairs > 0);
}
