use thiserror::Error;

use crate::domination::DominationCounterexample;
use crate::graph::Graph;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("pattern has {pattern} vertices but host only {host}")]
    PatternTooLarge { pattern: usize, host: usize },

    #[error("peeling exhausted the graph after {completed} of {target} steps")]
    ShrunkBelowTarget { completed: usize, target: usize },

    #[error("inner embedding failed: {0}")]
    InnerEmbeddingFailed(String),

    #[error("regime infeasible: {0}")]
    RegimeInfeasible(String),

    #[error("no dominating pair for vertex families at step {step}")]
    NoDominatingPair { step: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("exact domination check exceeded its work cap of {cap} probes")]
    ExactCheckInfeasible { cap: u64 },

    #[error("enumeration of {requested} objects exceeds cap {cap}")]
    EnumerationTooLarge { requested: u128, cap: u128 },

    #[error("sampling budget exhausted after {tries} tries: {reason}")]
    BudgetExhausted {
        tries: usize,
        reason: String,
        best: Option<Box<Graph>>,
        counterexample: Option<Box<DominationCounterexample>>,
    },

    #[error("recursion depth exceeded cap {0}")]
    RecursionDepthExceeded(usize),

    #[error("parse error: {0}")]
    Parse(String),
}
