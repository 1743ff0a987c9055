//! Enumeration of the maximal members of strongly accessible set systems by
//! reverse search.
//!
//! A system is a ground set `1..=n` with a membership oracle
//! ([`SetSystemInstance`]). Three engines list its maximal members without
//! repetition:
//!
//! * [`enumerate_basic`] works for any strongly accessible system;
//! * [`enumerate_refined`] needs a commutable system and a
//!   [`RestrictedSolver`], and has polynomial delay when the solver does;
//! * [`stateless_traverse`] produces the same sequence as the refined engine
//!   while holding only a constant number of solution-sized sets.
//!
//! [`catalog`] has ready-made systems, including BC-cliques of bi-colored
//! graphs and the product-graph encoding of common connected induced
//! subgraphs.

pub mod basic;
pub mod catalog;
pub mod classify;
pub mod element;
pub mod error;
pub mod gauge;
pub mod io;
pub mod oracle;
pub mod order;
pub mod refined;
pub mod report;
pub mod restricted;
pub mod stateless;
pub mod system;
pub mod verify;

pub use basic::{children_basic, enumerate_basic, find_roots};
pub use classify::{classify_system, Classification};
pub use element::{Element, ElementSet};
pub use error::{Error, Result};
pub use oracle::{brute_force_maximal, lexmin_complete};
pub use order::{
    canonical_order, choose, compare, complete, complete_truncated, layer_of, parent, r_of,
    CanonicalSolution, ChooseStrategy, Completion, LayerAssignment,
};
pub use refined::{children_refined, enumerate_refined};
pub use report::{EnumerationReport, Sink};
pub use restricted::{
    restr_bcclique, restr_generic, BcCliqueRestricted, GenericRestricted, RestrictedSolver,
};
pub use stateless::{is_root, next_child, next_node, next_r, stateless_traverse, TraversalState};
pub use system::{Membership, Scope, SetSystemInstance, SystemClass};
