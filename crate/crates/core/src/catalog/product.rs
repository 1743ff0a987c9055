//! Product-graph reduction from common connected induced subgraphs to
//! BC-cliques, and a brute-force matcher to check it against.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::ElementSet;
use crate::error::{Error, Result};
use crate::refined::enumerate_refined;
use crate::restricted::BcCliqueRestricted;

use super::graph::{BiColoredGraph, EdgeColor, Graph};
use super::systems::bcclique_system;

/// Default bound on `|V(A)|·|V(B)|` for [`mccis_oracle`].
pub const MCCIS_GUARD: usize = 36;

/// A partial injective map from nodes of `A` to nodes of `B`, as pairs
/// sorted by the `A` node.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexPairMap {
    pairs: Vec<(u32, u32)>,
}

impl VertexPairMap {
    pub fn new(mut pairs: Vec<(u32, u32)>) -> Result<Self> {
        pairs.sort_unstable();
        let mut seen_a = HashSet::new();
        let mut seen_b = HashSet::new();
        for &(u, x) in &pairs {
            if !seen_a.insert(u) || !seen_b.insert(x) {
                return Err(Error::Invariant(format!(
                    "pair map is not injective at ({u}, {x})"
                )));
            }
        }
        Ok(VertexPairMap { pairs })
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl fmt::Display for VertexPairMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (u, x)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}:{x}")?;
        }
        Ok(())
    }
}

/// Product-graph label of the pair `(u, x)`, row-major in `A`.
pub fn pair_label(u: u32, x: u32, b_nodes: usize) -> u32 {
    (u - 1) * b_nodes as u32 + x
}

fn decode_label(label: u32, b_nodes: usize) -> (u32, u32) {
    let i = label - 1;
    (i / b_nodes as u32 + 1, i % b_nodes as u32 + 1)
}

/// Bi-colored product of `a` and `b`.
///
/// Pairs `(u, x)` and `(v, y)` with `u ≠ v` and `x ≠ y` get a black edge when
/// both `uv` and `xy` are edges, a white edge when neither is, and no edge
/// otherwise. Pairs sharing a coordinate are never adjacent.
pub fn product_graph(a: &Graph, b: &Graph) -> Result<BiColoredGraph> {
    let (na, nb) = (a.node_count(), b.node_count());
    if na == 0 || nb == 0 {
        return Err(Error::precondition(
            "product_graph needs two nonempty graphs",
        ));
    }
    let mut g = BiColoredGraph::new(na * nb);
    for u in 1..=na as u32 {
        for v in u + 1..=na as u32 {
            let ea = a.has_edge(u, v);
            for x in 1..=nb as u32 {
                for y in 1..=nb as u32 {
                    if x == y {
                        continue;
                    }
                    let color = match (ea, b.has_edge(x, y)) {
                        (true, true) => EdgeColor::Black,
                        (false, false) => EdgeColor::White,
                        _ => continue,
                    };
                    g.add_edge(pair_label(u, x, nb), pair_label(v, y, nb), color)?;
                }
            }
        }
    }
    Ok(g)
}

/// Decodes a BC-clique of `product_graph(a, b)` into the vertex pairs it
/// stands for.
pub fn map_back(solution: &ElementSet, a: &Graph, b: &Graph) -> Result<VertexPairMap> {
    let (na, nb) = (a.node_count(), b.node_count());
    let pairs = solution
        .iter()
        .map(|e| {
            if e.0 == 0 || e.0 as usize > na * nb {
                return Err(Error::Invariant(format!(
                    "label {e} is outside the product graph"
                )));
            }
            Ok(decode_label(e.label(), nb))
        })
        .collect::<Result<Vec<_>>>()?;
    VertexPairMap::new(pairs)
}

/// Maps found through the product graph next to the brute-force ones.
#[derive(Clone, Debug, Serialize)]
pub struct MccisCheck {
    pub found: Vec<VertexPairMap>,
    /// Brute-force maps the product graph did not produce.
    pub missing: Vec<VertexPairMap>,
    /// Product-graph maps the brute force does not know.
    pub extra: Vec<VertexPairMap>,
    /// Maps produced more than once.
    pub repeated: Vec<VertexPairMap>,
}

impl MccisCheck {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.repeated.is_empty()
    }
}

/// Enumerates maximal BC-cliques of the product of `a` and `b` and decodes
/// each into a vertex-pair map, in emission order.
pub fn mccis_via_product(a: &Graph, b: &Graph) -> Result<Vec<VertexPairMap>> {
    let g = product_graph(a, b)?;
    let inst = bcclique_system(g.clone());
    let mut out = Vec::new();
    let mut maps = Vec::new();
    enumerate_refined(&inst, &BcCliqueRestricted::new(g), &mut out)?;
    for s in &out {
        maps.push(map_back(s, a, b)?);
    }
    Ok(maps)
}

/// Checks that maximal BC-cliques of the product correspond one to one with
/// the brute-force maximal common connected induced subgraph maps.
pub fn check_mccis(a: &Graph, b: &Graph) -> Result<MccisCheck> {
    compare_mccis(mccis_via_product(a, b)?, a, b)
}

/// Compares maps decoded from some enumeration of the product against the
/// brute-force ones.
pub fn compare_mccis(found: Vec<VertexPairMap>, a: &Graph, b: &Graph) -> Result<MccisCheck> {
    let expected = mccis_oracle(a, b)?;
    let mut got = BTreeSet::new();
    let mut repeated = Vec::new();
    for m in &found {
        if !got.insert(m.clone()) {
            repeated.push(m.clone());
        }
    }
    Ok(MccisCheck {
        missing: expected.difference(&got).cloned().collect(),
        extra: got.difference(&expected).cloned().collect(),
        repeated,
        found,
    })
}

/// Every maximal isomorphism between connected induced subgraphs of `a` and
/// `b`, by exhaustive search over partial injective maps.
pub fn mccis_oracle(a: &Graph, b: &Graph) -> Result<BTreeSet<VertexPairMap>> {
    mccis_oracle_with_guard(a, b, MCCIS_GUARD)
}

pub fn mccis_oracle_with_guard(
    a: &Graph,
    b: &Graph,
    guard: usize,
) -> Result<BTreeSet<VertexPairMap>> {
    let size = a.node_count() * b.node_count();
    if size > guard {
        return Err(Error::TooLarge {
            what: "product of the input graphs",
            size,
            guard,
        });
    }

    let mut valid: HashSet<Vec<(u32, u32)>> = HashSet::new();
    let mut current = Vec::new();
    let mut used = vec![false; b.node_count() + 1];
    collect_maps(a, b, 1, &mut current, &mut used, &mut valid);

    let mut out = BTreeSet::new();
    for map in &valid {
        // a strictly larger valid map always has a valid one-pair extension
        // of `map` below it, so checking one-pair extensions decides maximality
        let extendable = (1..=a.node_count() as u32)
            .filter(|u| map.iter().all(|p| p.0 != *u))
            .any(|u| {
                (1..=b.node_count() as u32)
                    .filter(|x| map.iter().all(|p| p.1 != *x))
                    .any(|x| {
                        let mut bigger = map.clone();
                        bigger.push((u, x));
                        bigger.sort_unstable();
                        valid.contains(&bigger)
                    })
            });
        if !extendable {
            out.insert(VertexPairMap { pairs: map.clone() });
        }
    }
    Ok(out)
}

fn collect_maps(
    a: &Graph,
    b: &Graph,
    u: u32,
    current: &mut Vec<(u32, u32)>,
    used: &mut [bool],
    valid: &mut HashSet<Vec<(u32, u32)>>,
) {
    if u as usize > a.node_count() {
        if is_common_connected_induced(a, b, current) {
            valid.insert(current.clone());
        }
        return;
    }
    collect_maps(a, b, u + 1, current, used, valid);
    for x in 1..=b.node_count() as u32 {
        if used[x as usize] {
            continue;
        }
        used[x as usize] = true;
        current.push((u, x));
        collect_maps(a, b, u + 1, current, used, valid);
        current.pop();
        used[x as usize] = false;
    }
}

fn is_common_connected_induced(a: &Graph, b: &Graph, map: &[(u32, u32)]) -> bool {
    if map.is_empty() {
        return false;
    }
    for (i, &(u, x)) in map.iter().enumerate() {
        for &(v, y) in &map[i + 1..] {
            if a.has_edge(u, v) != b.has_edge(x, y) {
                return false;
            }
        }
    }
    let domain: Vec<u32> = map.iter().map(|p| p.0).collect();
    a.is_connected_within(&domain)
}
