//! Proof objects inside a network: closest-vertex partitions, min cycles and
//! their orientation, critical pairs, priority shortest-path trees and the
//! short detour attached to a critical pair.

mod cool_path;
mod critical;
mod cycles;
mod partition;
mod spt;

pub use cool_path::{cool_path_witness, CoolPathWitness};
pub use critical::{check_critical_pair, critical_pairs, critical_pairs_with, pair_record, CriticalPairRecord, PairCheck};
pub use cycles::{
    directed_orientation, find_chordless_four_cycle, find_triangle, has_four_cycle, is_directed_cycle, is_min_cycle,
    min_cycle_through_edge, min_cycles, simple_cycles, MinCycleRecord,
};
pub use partition::{closest_partition, closest_partition_with, PartitionSets};
pub use spt::{canonical_spt, priority_spt, spt_with_rule, ShortestPathTree};
