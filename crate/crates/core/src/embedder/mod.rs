//! Subgraph embeddings.
//!
//! [`embed_subgraph_oracle`] is a complete backtracking search used as ground
//! truth. The remaining procedures are the constructive ones: peeling onto
//! full-degree vertices, the greedy domination embedding for hosts with a
//! full-degree half, and the three-block embedding.

mod greedy;
mod oracle;
mod peel;

pub use greedy::{embed_first_regime, embed_second_regime, BlockHost, FirstRegimeHost};
pub use oracle::embed_subgraph_oracle;
pub use peel::{embed_via_full_vertices, full_vertex_host, peel_min_degree, peel_count, PeelResult};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Injective map from pattern vertices to host vertices; serialized as
/// `[host vertex for each pattern vertex]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding {
    assignment: Vec<usize>,
}

impl Embedding {
    pub fn new(assignment: Vec<usize>) -> Self {
        Self { assignment }
    }

    pub fn pattern_size(&self) -> usize {
        self.assignment.len()
    }

    pub fn image(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.assignment
    }

    /// Checks injectivity and edge preservation against `(pattern, host)`.
    pub fn validate(&self, pattern: &Graph, host: &Graph) -> Result<()> {
        if self.assignment.len() != pattern.n() {
            return Err(Error::SizeMismatch(format!(
                "embedding covers {} vertices, pattern has {}",
                self.assignment.len(),
                pattern.n()
            )));
        }
        let mut seen = vec![false; host.n()];
        for (v, &img) in self.assignment.iter().enumerate() {
            if img >= host.n() {
                return Err(Error::InvalidVertex { vertex: img, n: host.n() });
            }
            if std::mem::replace(&mut seen[img], true) {
                return Err(Error::InvalidArgument(format!(
                    "pattern vertex {v} reuses host vertex {img}"
                )));
            }
        }
        for (u, v) in pattern.edges() {
            if !host.has_edge(self.assignment[u], self.assignment[v]) {
                return Err(Error::InvalidArgument(format!(
                    "pattern edge {u}-{v} maps to non-edge {}-{}",
                    self.assignment[u], self.assignment[v]
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EmbedOptions {
    /// On a failed greedy step, defer to [`embed_subgraph_oracle`] instead of
    /// returning [`Error::NoDominatingPair`].
    pub fallback_to_oracle: bool,
    pub trace: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    FullDegree,
    InnerBlock,
    Domination,
    EmptyNeighbourhood,
    Leftover,
    Independent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub vertex: usize,
    pub image: usize,
    pub phase: Phase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbedOutcome {
    pub embedding: Embedding,
    pub used_fallback: bool,
    pub trace: Vec<TraceEvent>,
}

pub(crate) struct Tracer {
    enabled: bool,
    events: Vec<TraceEvent>,
}

impl Tracer {
    pub(crate) fn new(enabled: bool) -> Self {
        Self { enabled, events: Vec::new() }
    }

    pub(crate) fn record(&mut self, vertex: usize, image: usize, phase: Phase) {
        if self.enabled {
            self.events.push(TraceEvent { vertex, image, phase });
        }
    }

    pub(crate) fn finish(self) -> Vec<TraceEvent> {
        self.events
    }
}

/// Sub-oracle signature: embed `pattern` into `inner`.
pub type InnerEmbedder<'a> = dyn FnMut(&Graph, &Graph) -> Result<Option<Embedding>> + 'a;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_catches_errors() {
        let h = Graph::path(3);
        let g = Graph::cycle(4);
        assert!(Embedding::new(vec![0, 1, 2]).validate(&h, &g).is_ok());
        assert!(Embedding::new(vec![0, 2, 1]).validate(&h, &g).is_err());
        assert!(Embedding::new(vec![0, 1, 1]).validate(&h, &g).is_err());
        assert!(Embedding::new(vec![0, 1]).validate(&h, &g).is_err());
        assert!(Embedding::new(vec![0, 1, 9]).validate(&h, &g).is_err());
        assert_eq!(serde_json::to_string(&Embedding::new(vec![2, 0, 1])).unwrap(), "[2,0,1]");
    }
}
