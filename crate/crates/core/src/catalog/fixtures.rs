//! The 8-node running-example bi-colored graph.
//!
//! Reconstructed so that every value quoted for the example holds: its
//! maximal BC-cliques are exactly {1,2,3,5,6}, {3,4,5} and {2,5,7,8};
//! `{1,2}^+ = {5,6}`; 3 has no black edge to 1 or 2; layers of
//! {1,2,3,5,6} from 1 are 0,1,3,2,2. Treat as frozen.

use super::graph::BiColoredGraph;

pub const FIG1_NODES: usize = 8;

pub const FIG1_BLACK: &[(u32, u32)] = &[
    (1, 2),
    (2, 5),
    (2, 6),
    (2, 8),
    (3, 5),
    (4, 5),
    (5, 8),
    (7, 8),
];

pub const FIG1_WHITE: &[(u32, u32)] = &[
    (1, 3),
    (1, 5),
    (1, 6),
    (2, 3),
    (2, 7),
    (3, 4),
    (3, 6),
    (5, 6),
    (5, 7),
];

/// Maximal BC-cliques of [`fig1`], sorted.
pub const FIG1_MAXIMAL: &[&[u32]] = &[&[1, 2, 3, 5, 6], &[2, 5, 7, 8], &[3, 4, 5]];

pub fn fig1() -> BiColoredGraph {
    BiColoredGraph::from_edges(FIG1_NODES, FIG1_BLACK, FIG1_WHITE).expect("fixture edges are valid")
}
