//! Zero-divisor graphs of `Z_n` and their very cost effective bipartitions.
//!
//! - [`ring`]: factorization, zero divisors, nilpotents, modulus shapes.
//! - [`graph`]: labeled graphs, the zero-divisor / nilradical /
//!   non-nilradical builders, line and total graphs.
//! - [`vce`]: the bipartition checker.
//! - [`constructions`]: explicit bipartitions per modulus shape and the
//!   dispatcher producing [`constructions::Certificate`]s.
//! - [`search`]: exhaustive and heuristic existence search.

pub mod constructions;
pub mod graph;
pub mod ring;
pub mod search;
pub mod vce;

pub use constructions::{dispatch, Certificate, CertificateKind, ConstructionId, Dispatch};
pub use graph::{Family, LabeledGraph, VertexLabel};
pub use vce::{check_bipartition, Bipartition, Side, VceReport};
