//! Exact domination, exponential domination and porous exponential
//! domination numbers of small graphs, with tools for checking
//! forbidden induced subgraph characterizations by exhaustive search.

pub mod cache;
pub mod domination;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod hereditary;
pub mod patterns;
pub mod report;

pub use error::{Error, Result};
pub use graph::{canonical_code, CanonicalCode, Distance, Graph, VertexSet};
