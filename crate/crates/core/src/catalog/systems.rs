use std::collections::HashSet;
use std::sync::Arc;

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::system::{Membership, SetSystemInstance, SystemClass};

use super::graph::{BiColoredGraph, Graph};

struct CliqueOracle(Graph);

impl Membership for CliqueOracle {
    fn contains(&self, set: &[Element]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, a)| set[i + 1..].iter().all(|b| self.0.has_edge(a.0, b.0)))
    }

    fn extends(&self, base: &[Element], y: Element) -> bool {
        base.iter().all(|x| self.0.has_edge(x.0, y.0))
    }
}

/// Cliques of `g`.
pub fn clique_system(g: &Graph) -> SetSystemInstance {
    SetSystemInstance::new("clique", g.node_count(), CliqueOracle(g.clone()))
        .expect("the empty set is a clique")
        .declared(SystemClass::Hereditary)
}

/// Independent sets of `g`.
pub fn independent_set_system(g: &Graph) -> SetSystemInstance {
    struct Independent(Graph);
    impl Membership for Independent {
        fn contains(&self, set: &[Element]) -> bool {
            set.iter()
                .enumerate()
                .all(|(i, a)| set[i + 1..].iter().all(|b| !self.0.has_edge(a.0, b.0)))
        }

        fn extends(&self, base: &[Element], y: Element) -> bool {
            base.iter().all(|x| !self.0.has_edge(x.0, y.0))
        }
    }
    SetSystemInstance::new("independent", g.node_count(), Independent(g.clone()))
        .expect("the empty set is independent")
        .declared(SystemClass::Hereditary)
}

pub(crate) struct BcCliqueOracle(pub(crate) Arc<BiColoredGraph>);

impl Membership for BcCliqueOracle {
    fn contains(&self, set: &[Element]) -> bool {
        self.0.is_bc_clique(set)
    }

    fn extends(&self, base: &[Element], y: Element) -> bool {
        if base.is_empty() {
            return true;
        }
        let mut black = false;
        for x in base {
            match self.0.color(x.0, y.0) {
                None => return false,
                Some(c) => black |= c == super::graph::EdgeColor::Black,
            }
        }
        black
    }
}

/// BC-cliques of `g`: cliques under black ∪ white edges whose nodes are
/// connected by black edges.
pub fn bcclique_system(g: impl Into<Arc<BiColoredGraph>>) -> SetSystemInstance {
    let g = g.into();
    let n = g.node_count();
    SetSystemInstance::new("bcclique", n, BcCliqueOracle(g))
        .expect("the empty set is a BC-clique")
        .declared(SystemClass::ConnectedHereditary)
}

struct RequiredOracle {
    base: Arc<dyn Membership>,
    required: Vec<bool>,
}

impl RequiredOracle {
    fn hits(&self, set: &[Element]) -> bool {
        set.iter()
            .any(|e| self.required.get(e.index()).copied().unwrap_or(false))
    }
}

impl Membership for RequiredOracle {
    fn contains(&self, set: &[Element]) -> bool {
        (set.is_empty() || self.hits(set)) && self.base.contains(set)
    }

    fn extends(&self, base: &[Element], y: Element) -> bool {
        if base.is_empty() {
            return self.required.get(y.index()).copied().unwrap_or(false)
                && self.base.contains(&[y]);
        }
        self.base.extends(base, y)
    }
}

/// Members of `base` that are empty or meet `required`.
///
/// The result is commutable whenever `base` is commutable and every required
/// element is a good singleton of `base`; it is never hereditary unless
/// `required` covers the ground set.
pub fn required_variant(
    base: &SetSystemInstance,
    required: &ElementSet,
) -> Result<SetSystemInstance> {
    base.check_range(required)?;
    let mut flags = vec![false; base.size()];
    for e in required.iter() {
        flags[e.index()] = true;
    }
    let oracle = RequiredOracle {
        base: Arc::clone(base.oracle()),
        required: flags,
    };
    let class = if base.class().is_commutable() && required.iter().all(|e| base.is_good(e)) {
        SystemClass::Commutable
    } else {
        SystemClass::StronglyAccessible
    };
    Ok(
        SetSystemInstance::new(format!("required-{}", base.name()), base.size(), oracle)?
            .declared(class),
    )
}

/// Vertex sets of simple paths of the tree `tree` that contain a leaf.
pub fn leaf_path_system(tree: &Graph) -> Result<SetSystemInstance> {
    let n = tree.node_count();
    let all: Vec<u32> = (1..=n as u32).collect();
    if n == 0 || tree.edge_count() != n - 1 || !tree.is_connected_within(&all) {
        return Err(Error::precondition("leaf_path_system needs a tree"));
    }
    let tree = tree.clone();
    let oracle = move |set: &[Element]| {
        if set.is_empty() {
            return true;
        }
        let labels: Vec<u32> = set.iter().map(|e| e.0).collect();
        let inner_degree = |u: u32| labels.iter().filter(|&&v| tree.has_edge(u, v)).count();
        tree.is_connected_within(&labels)
            && labels.iter().all(|&u| inner_degree(u) <= 2)
            && labels.iter().any(|&u| tree.neighbors(u).len() <= 1)
    };
    Ok(SetSystemInstance::new("leaf-path", n, oracle)?.declared(SystemClass::Commutable))
}

/// A system given by listing its nonempty members.
pub fn explicit_system(size: usize, members: &[ElementSet]) -> Result<SetSystemInstance> {
    let probe = SetSystemInstance::new("probe", size, |_: &[Element]| true)?;
    for m in members {
        probe.check_range(m)?;
    }
    let family: HashSet<Vec<u32>> = members.iter().map(ElementSet::labels).collect();
    let oracle = move |set: &[Element]| {
        set.is_empty() || family.contains(&set.iter().map(|e| e.0).collect::<Vec<_>>())
    };
    SetSystemInstance::new("explicit", size, oracle)
}
