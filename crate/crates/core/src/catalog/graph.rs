use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};

/// Simple undirected graph on nodes `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..=n as u32 {
            for v in u + 1..=n as u32 {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n as u32 {
            g.add_edge(u, u + 1).unwrap();
        }
        g
    }

    /// Erdős–Rényi graph with edge probability `p`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Graph::new(n);
        for u in 1..=n as u32 {
            for v in u + 1..=n as u32 {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Rejects self-loops, out-of-range labels and repeated edges.
    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<()> {
        check_pair(self.n, u, v)?;
        if self.has_edge(u, v) {
            return Err(Error::Format(format!("duplicate edge {u}-{v}")));
        }
        insert_sorted(&mut self.adj[u as usize - 1], v);
        insert_sorted(&mut self.adj[v as usize - 1], u);
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v
            && (1..=self.n as u32).contains(&u)
            && self.adj[u as usize - 1].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, u: u32) -> &[u32] {
        &self.adj[u as usize - 1]
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for u in 1..=self.n as u32 {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 1..=self.n as u32 {
            for v in u + 1..=self.n as u32 {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Whether `nodes` induces a connected subgraph. The empty set counts as
    /// connected.
    pub fn is_connected_within(&self, nodes: &[u32]) -> bool {
        connected_within(nodes, |a, b| self.has_edge(a, b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeColor {
    Black,
    White,
}

/// Graph whose edges are black or white, on nodes `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiColoredGraph {
    n: usize,
    black: Vec<Vec<u32>>,
    white: Vec<Vec<u32>>,
}

impl BiColoredGraph {
    pub fn new(n: usize) -> Self {
        BiColoredGraph {
            n,
            black: vec![Vec::new(); n],
            white: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, black: &[(u32, u32)], white: &[(u32, u32)]) -> Result<Self> {
        let mut g = BiColoredGraph::new(n);
        for &(u, v) in black {
            g.add_edge(u, v, EdgeColor::Black)?;
        }
        for &(u, v) in white {
            g.add_edge(u, v, EdgeColor::White)?;
        }
        Ok(g)
    }

    /// Each pair independently gets a black edge with probability
    /// `p_black`, else a white edge with probability `p_white`, else none.
    pub fn random<R: Rng + ?Sized>(n: usize, p_black: f64, p_white: f64, rng: &mut R) -> Self {
        let mut g = BiColoredGraph::new(n);
        for u in 1..=n as u32 {
            for v in u + 1..=n as u32 {
                let roll: f64 = rng.gen();
                if roll < p_black {
                    g.add_edge(u, v, EdgeColor::Black).unwrap();
                } else if roll < p_black + p_white {
                    g.add_edge(u, v, EdgeColor::White).unwrap();
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: u32, v: u32, color: EdgeColor) -> Result<()> {
        check_pair(self.n, u, v)?;
        match self.color(u, v) {
            Some(c) if c == color => return Err(Error::Format(format!("duplicate edge {u}-{v}"))),
            Some(_) => return Err(Error::Format(format!("edge {u}-{v} is given both colors"))),
            None => {}
        }
        let lists = match color {
            EdgeColor::Black => &mut self.black,
            EdgeColor::White => &mut self.white,
        };
        insert_sorted(&mut lists[u as usize - 1], v);
        insert_sorted(&mut lists[v as usize - 1], u);
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn color(&self, u: u32, v: u32) -> Option<EdgeColor> {
        if u == v || !(1..=self.n as u32).contains(&u) || !(1..=self.n as u32).contains(&v) {
            return None;
        }
        if self.black[u as usize - 1].binary_search(&v).is_ok() {
            Some(EdgeColor::Black)
        } else if self.white[u as usize - 1].binary_search(&v).is_ok() {
            Some(EdgeColor::White)
        } else {
            None
        }
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.color(u, v).is_some()
    }

    pub fn is_black(&self, u: u32, v: u32) -> bool {
        self.color(u, v) == Some(EdgeColor::Black)
    }

    pub fn black_neighbors(&self, u: u32) -> &[u32] {
        &self.black[u as usize - 1]
    }

    pub fn black_edges(&self) -> Vec<(u32, u32)> {
        sorted_pairs(&self.black)
    }

    pub fn white_edges(&self) -> Vec<(u32, u32)> {
        sorted_pairs(&self.white)
    }

    /// Clique under black ∪ white edges, connected under black edges.
    pub fn is_bc_clique(&self, nodes: &[Element]) -> bool {
        for (i, a) in nodes.iter().enumerate() {
            for b in &nodes[i + 1..] {
                if !self.adjacent(a.0, b.0) {
                    return false;
                }
            }
        }
        let labels: Vec<u32> = nodes.iter().map(|e| e.0).collect();
        connected_within(&labels, |a, b| self.is_black(a, b))
    }
}

fn check_pair(n: usize, u: u32, v: u32) -> Result<()> {
    if u == 0 || v == 0 || u as usize > n || v as usize > n {
        return Err(Error::Format(format!(
            "edge {u}-{v} is outside nodes 1..={n}"
        )));
    }
    if u == v {
        return Err(Error::Format(format!("self-loop on node {u}")));
    }
    Ok(())
}

fn insert_sorted(list: &mut Vec<u32>, v: u32) {
    if let Err(pos) = list.binary_search(&v) {
        list.insert(pos, v);
    }
}

fn sorted_pairs(lists: &[Vec<u32>]) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for (i, list) in lists.iter().enumerate() {
        let u = i as u32 + 1;
        out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
    }
    out
}

pub(crate) fn connected_within(nodes: &[u32], edge: impl Fn(u32, u32) -> bool) -> bool {
    if nodes.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; nodes.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in 0..nodes.len() {
            if !seen[j] && edge(nodes[i], nodes[j]) {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == nodes.len()
}
