//! Constructions, metrics and exhaustive searches for vertex-degree covering
//! thresholds of 3-graphs, triangle-degrees and book numbers of graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`] holds [`RGraph`], an immutable labelled r-uniform hypergraph
//!   with exact degree, link and density queries.
//! - [`cover`] embeds small motifs, counts triangle- and clique-degrees, book
//!   sizes, bipartite edit distance and independence numbers.
//! - [`constructions`] generates the extremal families together with a
//!   [`Manifest`](constructions::Manifest) of checkable claims.
//! - [`steiner`] builds and checks Steiner triple systems.
//! - [`formulas`] evaluates the closed-form bounds exactly or to high
//!   precision.
//! - [`oracle`] runs exhaustive searches over tiny graphs.
//! - [`verifier`] groups all of the above into named claim suites.

pub mod comb;
pub mod constructions;
pub mod cover;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod oracle;
pub mod steiner;
pub mod verifier;

pub use cover::Motif;
pub use error::{Error, Result};
pub use graph::{RGraph, Vertex, VertexSet};
