//! Concrete set systems and the graph constructions behind them.

pub mod fixtures;
pub mod gadget;
pub mod graph;
pub mod product;
pub mod systems;

pub use fixtures::fig1;
pub use gadget::{parse_dimacs, sat_gadget, Cnf, GadgetLabels};
pub use graph::{BiColoredGraph, EdgeColor, Graph};
pub use product::{
    check_mccis, compare_mccis, map_back, mccis_oracle, mccis_oracle_with_guard, mccis_via_product,
    pair_label, product_graph, MccisCheck, VertexPairMap, MCCIS_GUARD,
};
pub use systems::{
    bcclique_system, clique_system, explicit_system, independent_set_system, leaf_path_system,
    required_variant,
};
