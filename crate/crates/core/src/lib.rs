//! Spanning universal graphs.
//!
//! A graph on `n` vertices is `(n, m)`-universal when it contains every
//! `n`-vertex graph with `m` edges as a (not necessarily induced) subgraph.
//! This crate builds such graphs with a full-degree core plus a random part
//! satisfying a domination property, embeds targets into them, evaluates the
//! known lower and upper bounds on the minimum edge count `g(n, m)` with
//! directed rounding, and checks everything against an exhaustive oracle on
//! small instances.

pub mod bounds;
pub mod constructor;
pub mod domination;
pub mod embedder;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod precise;
pub mod random_models;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
