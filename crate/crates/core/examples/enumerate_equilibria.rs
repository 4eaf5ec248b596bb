//! Every stable network on four agents, by exhaustive profile enumeration,
//! compared with the graph-first enumeration.

use ncg_core::harness::{find_equilibria, EnumerationSpec, Space};

fn main() -> ncg_core::Result<()> {
    for alpha in ["1/2", "2", "4"] {
        let alpha = alpha.parse()?;
        let profiles = find_equilibria(&EnumerationSpec::new(4, Space::ProfileSpace).with_dedupe(true), alpha)?;
        let graphs = find_equilibria(&EnumerationSpec::new(4, Space::GraphFirst), alpha)?;
        println!(
            "alpha {alpha}: {} profiles -> {} classes ({} non-trees); graph-first {} classes; agree: {}",
            profiles.profiles_examined,
            profiles.equilibria.len(),
            profiles.non_trees,
            graphs.equilibria.len(),
            profiles.equilibria == graphs.equilibria
        );
        for e in &profiles.equilibria {
            println!("  cost {:>6}  {:?}", e.social_cost.to_string(), e.network.bought_edges());
        }
    }
    Ok(())
}
