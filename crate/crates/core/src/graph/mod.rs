//! Ownership-labelled networks, shortest paths, biconnected components and
//! tree centroids.

mod bcc;
mod centroid;
mod distance;
mod network;
mod text;

pub use bcc::{biconnected_components, component_of_edge, BiconnectedComponent};
pub use centroid::{centroids, CentroidReport, RootedTree};
pub use distance::{
    all_pairs_distances, bfs, bfs_avoiding, distcost, shortest_path, sum_distance_to_set, Dist, DistanceMatrix,
};
pub use network::{edge, Edge, OwnedNetwork};
pub use text::{parse_network, serialize_network};

/// Convenience constructor: `n` agents and `(owner, target)` purchases.
pub fn build_network(n: usize, bought_edges: &[(usize, usize)]) -> crate::Result<OwnedNetwork> {
    OwnedNetwork::new(n, bought_edges)
}
