//! Seeded random instances shared by the integration tests.

#![allow(dead_code)]

use std::sync::Arc;

use maxsets::catalog::{
    bcclique_system, clique_system, independent_set_system, required_variant, sat_gadget,
    BiColoredGraph, Cnf, GadgetLabels, Graph,
};
use maxsets::order::ChooseStrategy::LayeredMin;
use maxsets::{choose, enumerate_refined, Element, Scope};
use maxsets::{
    BcCliqueRestricted, ElementSet, GenericRestricted, RestrictedSolver, SetSystemInstance,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Instances per system kind in the full matrix.
pub const MATRIX_SIZE: u64 = 200;
pub const MAX_GROUND: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Clique,
    Independent,
    BcClique,
    RequiredBcClique,
}

pub const KINDS: [Kind; 4] = [
    Kind::Clique,
    Kind::Independent,
    Kind::BcClique,
    Kind::RequiredBcClique,
];

pub struct Case {
    pub kind: Kind,
    pub seed: u64,
    pub inst: SetSystemInstance,
    pub graph: Option<Arc<BiColoredGraph>>,
}

impl Case {
    /// The specialised solver for plain BC-cliques, the generic one otherwise.
    pub fn solver(&self) -> Box<dyn RestrictedSolver> {
        match (&self.graph, self.kind) {
            (Some(g), Kind::BcClique) => Box::new(BcCliqueRestricted::new(Arc::clone(g))),
            _ => Box::new(GenericRestricted::default()),
        }
    }

    pub fn label(&self) -> String {
        format!(
            "{:?} seed {} (|U| = {})",
            self.kind,
            self.seed,
            self.inst.size()
        )
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_bicolored(n: usize, rng: &mut ChaCha8Rng) -> BiColoredGraph {
    let p_black = rng.gen_range(0.2..0.6);
    let p_white = rng.gen_range(0.1..(0.95 - p_black));
    BiColoredGraph::random(n, p_black, p_white, rng)
}

pub fn case_with_size(kind: Kind, seed: u64, n: usize) -> Case {
    let mut rng = rng(seed ^ (kind as u64) << 32);
    match kind {
        Kind::Clique | Kind::Independent => {
            let g = Graph::random(n, rng.gen_range(0.2..0.8), &mut rng);
            let inst = if kind == Kind::Clique {
                clique_system(&g)
            } else {
                independent_set_system(&g)
            };
            Case {
                kind,
                seed,
                inst,
                graph: None,
            }
        }
        Kind::BcClique | Kind::RequiredBcClique => {
            let g = Arc::new(random_bicolored(n, &mut rng));
            let base = bcclique_system(Arc::clone(&g));
            let inst = if kind == Kind::BcClique {
                base
            } else {
                let k = rng.gen_range(1..=3.min(n));
                let required = ElementSet::from_labels((0..k).map(|_| rng.gen_range(1..=n as u32)));
                required_variant(&base, &required).unwrap()
            };
            Case {
                kind,
                seed,
                inst,
                graph: Some(g),
            }
        }
    }
}

/// Instance `seed` of `kind`, with `|U|` drawn from `4..=12`.
pub fn case(kind: Kind, seed: u64) -> Case {
    let n = rng(seed.wrapping_mul(0x9e37_79b9)).gen_range(4..=MAX_GROUND);
    case_with_size(kind, seed, n)
}

pub fn matrix(kind: Kind, count: u64) -> impl Iterator<Item = Case> {
    (0..count).map(move |seed| case(kind, seed))
}

/// A random member of `inst` grown from a random good singleton.
pub fn random_member(inst: &SetSystemInstance, rng: &mut ChaCha8Rng) -> ElementSet {
    let z = inst.good_singletons();
    if z.is_empty() {
        return ElementSet::new();
    }
    let mut x = ElementSet::singleton(z.as_slice()[rng.gen_range(0..z.len())]);
    let steps = rng.gen_range(0..inst.size());
    for _ in 0..steps {
        let ext = inst.extension_set(&x, maxsets::Scope::All).unwrap();
        if ext.is_empty() {
            break;
        }
        x.insert(ext.as_slice()[rng.gen_range(0..ext.len())]);
    }
    x
}

/// Key-fact samples drawn per instance.
pub const KEY_FACT_SAMPLES: usize = 40;
/// Premise-satisfying samples needed across the matrix, so the key-fact
/// suite cannot pass vacuously.
pub const KEY_FACT_MIN_EXERCISED: usize = 2_000;

pub struct KeyFactSample {
    pub x: ElementSet,
    pub a: ElementSet,
    pub y: ElementSet,
    pub t: Element,
    pub b: Element,
}

/// Grows `y` inside `a` one random extension at a time, never adding `b`.
fn grow_avoiding(
    inst: &SetSystemInstance,
    x: &ElementSet,
    a: &ElementSet,
    b: Element,
    r: &mut ChaCha8Rng,
) -> ElementSet {
    let mut cur = x.clone();
    let steps = r.gen_range(1..=a.len().max(1));
    for _ in 0..steps {
        let mut options: Vec<Element> = inst
            .extension_set(&cur, Scope::Within(a))
            .unwrap()
            .iter()
            .filter(|&e| e != b)
            .collect();
        options.shuffle(r);
        let Some(&e) = options.first() else { break };
        cur.insert(e);
    }
    cur.difference(x)
}

pub fn key_fact_sample(inst: &SetSystemInstance, r: &mut ChaCha8Rng) -> Option<KeyFactSample> {
    let x = random_member(inst, r);
    if x.is_empty() {
        return None;
    }
    let t = inst.source(&x).unwrap();
    let a: ElementSet = inst
        .elements()
        .filter(|e| x.contains(*e) || r.gen_bool(0.75))
        .collect();
    let b = choose(inst, &x, Scope::Within(&a), LayeredMin, Some(t)).ok()?;
    let y = grow_avoiding(inst, &x, &a, b, r);
    let xy = x.union(&y);
    if y.is_empty()
        || !inst
            .extension_set(&xy, Scope::Within(&a))
            .unwrap()
            .contains(b)
    {
        return None;
    }
    Some(KeyFactSample { x, a, y, t, b })
}

impl KeyFactSample {
    /// `choose(X ∪ Y, A)` from the same start must still pick `b`.
    pub fn check(&self, inst: &SetSystemInstance) -> Result<(), String> {
        let xy = self.x.union(&self.y);
        let again = choose(inst, &xy, Scope::Within(&self.a), LayeredMin, Some(self.t))
            .map_err(|e| e.to_string())?;
        if again != self.b {
            return Err(format!(
                "X = {{{}}}, Y = {{{}}}, A = {{{}}}, t = {}: picked {} then {}",
                self.x, self.y, self.a, self.t, self.b, again
            ));
        }
        Ok(())
    }
}

/// Random CNF over at most 4 variables. Short clauses over few variables
/// keep both satisfiable and unsatisfiable formulas common.
pub fn random_cnf(r: &mut impl Rng) -> Cnf {
    let vars = r.gen_range(1..=4);
    let clauses = (0..r.gen_range(2..=2 * vars + 2))
        .map(|_| {
            (0..r.gen_range(1..=2))
                .map(|_| {
                    let v = r.gen_range(1..=vars as i32);
                    if r.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    Cnf::new(vars, clauses).unwrap()
}

/// Whether some maximal BC-clique through `Y1` holds every clause node.
pub fn gadget_says_satisfiable(cnf: &Cnf) -> bool {
    let lab = GadgetLabels {
        clauses: cnf.clauses.len(),
        vars: cnf.vars,
    };
    let g = sat_gadget(cnf).unwrap();
    let inst = bcclique_system(g.clone());
    let mut out = Vec::new();
    enumerate_refined(&inst, &BcCliqueRestricted::new(g), &mut out).unwrap();
    out.iter()
        .filter(|s| s.contains(Element(lab.y(1))))
        .any(|s| (1..=cnf.clauses.len()).all(|i| s.contains(Element(lab.c(i)))))
}
