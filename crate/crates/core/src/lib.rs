//! Symmetry-breaking indices of finite graphs.
//!
//! The crate computes the distinguishing number D, the distinguishing
//! threshold θ, the counts Φ_k / φ_k of non-equivalent distinguishing
//! colorings, the partition counts Π, Ψ, Ξ (and their exact-`k` versions),
//! and distinguishing numbers of lexicographic products and X-joins.
//!
//! Coloring counts have three backends that cross-check one another:
//! exhaustive enumeration, Möbius inversion over the subgroup lattice of the
//! automorphism group, and closed forms for named families.

pub mod coloring;
pub mod combinat;
pub mod error;
pub mod golden;
pub mod graph;
pub mod group;
pub mod index;
pub mod partition;
pub mod products;
pub mod properties;
pub mod tables;

pub use error::{Error, Result};
pub use index::{Backend, BackendChoice, IndexValue, Mode, Rule};
