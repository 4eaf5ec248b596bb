//! Random restarts of single-move dynamics looking for stable non-trees.
//! Cheap edges leave cycles; above the tree threshold nothing survives.

use ncg_core::game::Mode;
use ncg_core::harness::counterexample_search;

fn main() -> ncg_core::Result<()> {
    for (n, alpha) in [(8, "1/2"), (8, "3"), (6, "11")] {
        let r = counterexample_search(n, alpha.parse()?, 300, 42, Mode::SingleMove, 1)?;
        let certified = r.candidates.iter().filter(|c| c.exact_stable == Some(true)).count();
        println!(
            "n {n} alpha {alpha}: {} converged, {} trees, {} non-tree classes, {} exactly stable",
            r.converged,
            r.converged_trees,
            r.candidates.len(),
            certified
        );
    }
    Ok(())
}
