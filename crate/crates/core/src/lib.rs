//! Strong (r,p) covers of k-uniform hypergraphs.
//!
//! A hyperedge is *properly (r,p) colored* by an r-coloring of the vertices
//! when at least `min(p, |e|)` of its vertices receive pairwise distinct
//! colors. A *strong (r,p) cover* is a set of r-colorings such that every
//! hyperedge is properly colored in at least one of them; the cover number
//! `χᶜ(G,k,r,p)` is the minimum size of such a set.
//!
//! The crate provides:
//!
//! * [`hypergraph`] — the data model (hypergraphs, generators, structural
//!   transformations such as [`hypergraph::shrink`] and
//!   [`hypergraph::two_section`]).
//! * [`coloring`] — colorings, covers, and the properness/verification
//!   predicates.
//! * [`counting`] — the maximum number `M(n,k,r,p)` of edges a single
//!   coloring can cover (formula bracket and exact search) and the derived
//!   edge-count lower bound on the cover number.
//! * [`exact`] — exact cover numbers by iterative-deepening search with
//!   symmetry reduction, plus the p-strong chromatic number.
//! * [`construct`] — divide-and-conquer cover construction with
//!   Baranyai-style round scheduling and the closed-form size bounds.
//! * [`lll`] — probabilistic constructions: union-bound random covers and
//!   Moser–Tardos resampling, with their feasibility thresholds.
//! * [`io`] — plain-text and JSON file formats for hypergraphs and covers.
//! * [`table`] — the grid of cover numbers for complete hypergraphs.

pub mod coloring;
pub mod construct;
pub mod counting;
pub mod exact;
pub mod hypergraph;
pub mod io;
pub mod lll;
mod partitions;
pub mod table;

pub use coloring::{properly_colored, uncovered_edges, verify_cover, Coloring, Cover, CoverParams};
pub use hypergraph::{
    complete_hypergraph, dependency, random_hypergraph, shrink, shrink_at, two_section, Hypergraph,
};

/// Errors shared by every module in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("resample limit reached after {0} resamples")]
    ResampleLimit(u64),
    #[error("iteration limit reached after {0} iterations")]
    IterationLimit(u64),
    #[error("dependency {dependency} exceeds the local-lemma threshold {threshold:.3} at x = {x}")]
    DependencyTooHigh {
        dependency: usize,
        threshold: f64,
        x: usize,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
