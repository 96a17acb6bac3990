//! Toolkit for triangle-free, `K_{s,t}`-free graphs of diameter two.
//!
//! The crate is organised around an immutable bitset [`Graph`]:
//!
//! - [`graph6`], [`canon`]: I/O and canonical labeling with automorphism statistics.
//! - [`properties`]: the witness predicate and the degree/SRG inequalities attached to it.
//! - [`constructions`]: named graphs and graph operations (blow-ups, twin quotients,
//!   cycle expansions, double covers).
//! - [`cayley`]: Cayley graphs on finite abelian groups and connection-set classification.
//! - [`search`]: isomorph-free exhaustive enumeration and closure engines.
//! - [`process`]: the constrained `{K_3, K_{s,t}}`-free random graph process.

pub mod bitset;
pub mod canon;
pub mod cayley;
pub mod constructions;
mod error;
pub mod graph;
pub mod graph6;
pub mod process;
pub mod properties;
pub mod quotient;
pub mod search;

pub use bitset::VertexSet;
pub use canon::{canonicalize, CanonicalReport};
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, MAX_VERTICES, UNREACHABLE};
pub use graph6::{from_graph6, to_graph6, Graph6Error};
pub use quotient::QuotientMultigraph;
