use alloc::boxed::Box;
use alloc::string::String;

use crate::graph::{BipartiteGraph, Part};
use crate::lemmas::Lemma;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("sizes {a}x{b} exceed the configured capacity {max}")]
    CapacityExceeded { a: usize, b: usize, max: usize },

    #[error("part sizes must both be at least 1 (got {a}x{b})")]
    InvalidSize { a: usize, b: usize },

    #[error("index {index} out of range for part {part:?} of size {size}")]
    IndexOutOfRange { part: Part, index: usize, size: usize },

    #[error("deleting the requested vertices would empty part {0:?}")]
    AllOfOnePartDeleted(Part),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("graph is not connected")]
    NotConnected,

    #[error("invalid seed path: {0}")]
    InvalidSeedPath(String),

    /// A lemma failed on an input meeting its hypotheses. The offending graph
    /// travels with the error so it can be written out as a counterexample.
    #[error("{lemma} lemma falsified at k = {k}")]
    LemmaFalsified {
        lemma: Lemma,
        k: usize,
        graph: Box<BipartiteGraph>,
    },

    #[error("base case has {edges} edges, above the bound {bound}")]
    BaseCaseViolated { edges: usize, bound: usize },

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("path search exceeded its budget of {budget} node expansions")]
    Timeout { budget: u64 },

    /// The extremal search was interrupted. `lower_bound` is the best
    /// connected pattern-free edge count seen so far; it is not exact.
    #[error("search interrupted after {nodes} nodes (lower bound {lower_bound:?})")]
    SearchTimeout {
        lower_bound: Option<usize>,
        nodes: u64,
    },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
