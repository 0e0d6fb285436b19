//! Connected bipartite Turán numbers of paths and brooms.
//!
//! The crate is `no_std` (it needs `alloc`). It provides bit-mask bipartite
//! graphs, exact path and broom containment, the extremal constructions, the
//! removal lemmas as runnable procedures, proof-replay certificates for the
//! path bound, and exhaustive searches for the extremal numbers themselves.
//!
//! ```
//! use bipturan_core::{path_extremal, turan_search, Mode, Pattern, TuranQuery};
//!
//! let g = path_extremal(3, 4, 3).unwrap();
//! assert_eq!(g.edge_count(), 6);
//!
//! let q = TuranQuery::new(3, 4, Pattern::path(5).unwrap(), Mode::BranchAndBound);
//! assert_eq!(turan_search(&q).unwrap().value, Some(6));
//! ```

#![no_std]

extern crate alloc;

pub mod certify;
pub mod construct;
pub mod error;
pub mod graph;
pub mod lemmas;
pub mod pattern;
pub mod search;
#[cfg(feature = "serde")]
mod serde_impls;

pub use certify::{build_certificate, verify_certificate, CertStep, Certificate, Rejection};
pub use construct::{broom_circulant, complete_bipartite, path_extremal};
pub use error::{Error, Result};
pub use graph::{BipartiteGraph, CanonicalKey, Deletion, Part, VertexRef};
pub use lemmas::{Lemma, LemmaReport, RootedSpanningTree};
pub use pattern::{contains_pattern, is_free, longest_path_length, Embedding, Pattern};
pub use search::{
    enumerate_free_graphs, turan, turan_oracle, turan_search, verify_theorem_table, Mode, SearchControl, TableRow,
    TableSpec, TuranQuery, TuranResult,
};
