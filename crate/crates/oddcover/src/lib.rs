//! Odd covers of graphs.
//!
//! An odd cover of a graph `G` is a collection of bicliques (complete
//! bipartite graphs) on subsets of `V(G)` whose edge sets have symmetric
//! difference exactly `E(G)`: every edge of `G` lies in an odd number of
//! bicliques and every non-edge in an even number. The minimum size of such
//! a collection is written `b2(G)`.
//!
//! This crate provides:
//!
//! - [`gf2`]: bit-packed linear algebra over the two-element field,
//!   including rank, XOR-subset solving, and the symplectic decomposition of
//!   symmetric zero-diagonal matrices;
//! - [`graph`]: a simple-graph type with generators for the relevant
//!   families, twin detection and reduction, and graph6 / edge-list I/O;
//! - [`cover`]: the odd-cover data model, verification, and the string
//!   encoding that identifies covers with vertex words over `{0,1,ε}`;
//! - [`construct`]: constructions that realize the known upper bounds
//!   (forests, bipartite graphs, odd cycles, complete graphs, graphs with an
//!   adjacent-twin perfect matching, rank-based and star-based covers);
//! - [`search`]: exact computation of `b2` for small graphs by iterative
//!   deepening over word assignments, with certified exhaustion.

// Everything here is mod-2 (and mod-4) arithmetic; `x % 2 == 0` is the
// domain idiom, not a missed `is_multiple_of`.
#![allow(clippy::manual_is_multiple_of)]

pub mod cover;
pub mod construct;
mod error;
pub mod gf2;
pub mod graph;
pub mod search;

pub use cover::{Biclique, CoverCode, OddCover, Triclique, VerifyReport};
pub use construct::ConstructionResult;
pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Gf2Vector, SymplecticDecomposition};
pub use graph::{AdjacentTwinMatching, Graph, Side, TwinClasses};
pub use search::{SearchConfig, SearchResult, SearchStatus};
