//! Laplacian eigenvectors with entries in {-1,+1} or {-1,0,+1}.
//!
//! The crate decides whether a simple graph has such an eigenvector, emits
//! certificates that are checked in exact integer arithmetic, and provides
//! the graph edits that carry these eigenvectors between graphs.
//!
//! ```
//! use lapvalent_core::{Graph, search::{search_valent, SearchOptions}};
//!
//! let c6 = Graph::cycle(6).unwrap();
//! let out = search_valent(&c6, &SearchOptions::trivalent()).unwrap();
//! assert!(out.exhausted);
//! assert!(out
//!     .certificates
//!     .iter()
//!     .any(|c| c.lambda() == 1 && c.valuation().values() == [0, 1, 1, 0, -1, -1]));
//! ```
//!
//! Modules:
//!
//! * [`graph`]: representation, generators, graph6 and DOT
//! * [`laplacian`]: exact eigenpair checks, valence, soft profiles
//! * [`spectra`]: Jacobi eigenvalues for numerical cross-checks
//! * [`search`]: brute force and pruned backtracking decision procedures
//! * [`transforms`]: eigenvector-carrying edits
//! * [`characterize`]: structural characterizations as checks
//! * [`catalog`]: witness graph generators
//!
//! The `parallel` feature (on by default) runs independent subproblems on
//! rayon; see [`par`].

pub mod catalog;
pub mod characterize;
pub mod error;
pub mod graph;
pub mod laplacian;
pub mod par;
pub mod search;
pub mod spectra;
pub mod transforms;
pub mod valuation;

pub use error::{Error, ErrorClass, Result};
pub use graph::{parse_graph6, write_graph6, Edge, Graph};
pub use laplacian::{Certificate, SoftProfile, Valence};
pub use valuation::Valuation;
