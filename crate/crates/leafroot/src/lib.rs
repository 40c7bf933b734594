//! Optimal leaf roots of trivially perfect graphs (chordal cographs).
//!
//! A tree T with leaf set V(G) is a k-leaf root of G when two vertices are
//! adjacent in G exactly if their leaves lie at distance at most k in T.
//! This crate computes, in O(n + m), a leaf root with the smallest possible
//! k of a requested parity (or the best of both), verifies leaf roots
//! against their graphs, decides k-leaf-power membership, and cross-checks
//! optimality against an exhaustive oracle on small instances.
//!
//! ```
//! use leafroot::{optimal_leaf_root, parse_graph, ParityMode};
//!
//! // A star: 0 joined to 1, 2, 3.
//! let g = parse_graph("4 3\n0 1\n0 2\n0 3\n").unwrap();
//! let root = optimal_leaf_root(&g, ParityMode::Best).unwrap();
//! assert_eq!(root.k, 3);
//! ```

#![forbid(unsafe_code)]

pub mod construct;
pub mod cotree;
pub mod gen;
pub mod graph;
pub mod verify;
pub mod wtree;

pub use construct::{
    mu, optimal_leaf_root, recognize_k_leaf_power, reinsert_twins, rho, ConstructError,
    LeafRootResult, Parity, ParityMode,
};
pub use cotree::{build_cotree, cotree_to_graph, validate_cotree, Cotree, CotreeError, CotreeKind};
pub use gen::{enumerate_small_tpgs, gen_family_f, gen_random_tpg, gen_star, GenError};
pub use graph::{
    is_trivially_perfect, parse_graph, remove_true_twins, Graph, Obstruction, ObstructionKind,
    ParseError, TwinMap,
};
pub use verify::{
    brute_force_is_k_leaf_power, brute_force_optimal, check_structural_theorems, is_k_leaf_root,
    min_k_for_tree, OracleError, OracleLimits, StructureReport, VerifyReport,
};
pub use wtree::{eta, Center, CompressedTree, TreeError, TreeMeta};
