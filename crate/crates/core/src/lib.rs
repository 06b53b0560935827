//! Extremal graphs avoiding `B_t`, the book of `t` four-cycles sharing one
//! edge (`K_2 x S_t` as a Cartesian product).
//!
//! * [`graph`] / [`graph6`]: bitset graphs, codegrees, serialization.
//! * [`constructions`]: polarity and incidence graphs, blow-ups.
//! * [`detect`]: `B_t` detection through auxiliary-graph matchings.
//! * [`audit`]: good-set counting and the exact counting inequalities.
//! * [`embed`]: greedy `K_2 x T` embedding and the deletion ledger.
//! * [`solver`]: exact `ex(n, B_t)` and `ex_bip(n, B_t)` for small `n`.
//! * [`bounds`]: closed-form coefficients of the asymptotic bounds.

pub mod audit;
pub mod bounds;
pub mod constructions;
pub mod detect;
pub mod embed;
pub mod error;
pub mod exec;
pub mod graph;
pub mod graph6;
pub mod matching;
pub mod solver;

/// Library version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{BipartiteGraph, Graph, GraphBuilder, Side, VertexSet};
