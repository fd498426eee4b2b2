//! Signed decompositions of spanning-tree cones of the complete graph on
//! `[0:n]` into path-tree cones.
//!
//! The indicator `χ_T` of the cone spanned by the edges of a spanning tree
//! `T` is a unique combination `Σ_s c(T, s) χ_s` of path-tree cone
//! indicators, with `c(T, s) = (-1)^(d(T) + d(T_s))` when the vertex orders
//! of `T` and `T_s` are compatible and 0 otherwise ([`treedecomp`]).
//!
//! Two independent routes check that formula:
//!
//! * [`conespace`] evaluates indicators exactly at sampled generic points
//!   and solves for the coefficients by exact linear algebra;
//! * [`polyalg`] expands `p_{G∖T}` in the basis `P_s` using the dual
//!   polynomials `M_s`, built as joint kernels of inflow-edge operators.

pub mod conespace;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod polyalg;
pub mod poset;
pub mod treedecomp;

pub use error::{Error, Result};
pub use graph::{
    complete_graph, enumerate_spanning_trees, mismatch, path_tree, reorient, sources, OrientedEdge,
    OrientedGraph, Permutation, SpanningTree, Vertex,
};
pub use linalg::{Rational, RationalMatrix, RationalVector};
pub use polyalg::{Polynomial, SymbolicBasis};
pub use poset::{compatible, linear_extensions, tree_partial_order, TreePartialOrder};
pub use treedecomp::{coefficient, decompose, decompose_combination, Decomposition, Target};
