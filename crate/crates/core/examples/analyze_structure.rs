//! Structural view of one network: biconnected components, min cycles,
//! directed cycles and critical pairs.

use ncg_core::graph::{biconnected_components, OwnedNetwork};
use ncg_core::structure::{critical_pairs, min_cycles};

fn main() -> ncg_core::Result<()> {
    // Two agents each buy two edges of a theta graph; a pendant hangs off it.
    let net = OwnedNetwork::new(
        8,
        &[(0, 1), (0, 3), (0, 5), (0, 6), (1, 4), (1, 6), (3, 2), (4, 2), (5, 6), (7, 2)],
    )?;
    for h in biconnected_components(&net) {
        println!("component {:?} cycle: {}", h.vertices, h.is_cycle());
    }
    for c in min_cycles(&net) {
        println!("min cycle {:?} owners {:?} directed: {}", c.vertices, c.owners, c.is_directed);
    }
    for p in critical_pairs(&net) {
        println!(
            "critical pair <{}, {}>: v1 {} v2 {} u' {} strong {} ({} choices)",
            p.v, p.u, p.v1, p.v2, p.u_prime, p.strong, p.choices
        );
    }
    Ok(())
}
