//! Set partitions up to automorphism, and the partition indices built on them.
//!
//! Three families are counted, each with at most / exactly `k` cells:
//! all partitions (Π, π), partitions whose cells no non-identity automorphism
//! fixes individually (Ψ, ψ; these are exactly the partitions whose cell
//! coloring is distinguishing), and partitions no non-identity automorphism
//! maps onto themselves even when permuting cells (Ξ, ξ).

mod orbits;
mod set_partition;

pub use orbits::{
    closed_form_psi, count_partition_index, dp_number, partition_orbits, PartitionCensus,
    PartitionClass, PartitionFamily, PartitionOrbits, StabilizerKind, MAX_PARTITIONS,
};
pub use set_partition::{RgsWalker, SetPartition};
