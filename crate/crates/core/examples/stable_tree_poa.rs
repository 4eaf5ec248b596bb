//! Stable trees at moderate prices: their cost ratio against the optimum,
//! centroid orientation, and depth compared with the bounds.

use ncg_core::bounds::{opt_social_cost, tree_poa_bound};
use ncg_core::game::Mode;
use ncg_core::graph::centroids;
use ncg_core::harness::{find_equilibria, tree_bound_violations, EnumerationSpec, Space};
use ncg_core::rational::format_rational;

fn main() -> ncg_core::Result<()> {
    let n = 7;
    for alpha in ["2", "5", "12"] {
        let alpha = alpha.parse()?;
        let spec = EnumerationSpec::new(n, Space::Trees).with_mode(Mode::SingleMove);
        let report = find_equilibria(&spec, alpha)?;
        let opt = opt_social_cost(n, alpha)?;
        let bound = tree_poa_bound(n, alpha)?;
        let worst = report.trees().filter_map(|r| r.social_cost.finite()).max().expect("a stable tree exists");
        let bad: usize = report.trees().map(|r| tree_bound_violations(&r.network, alpha).map(|v| v.len())).sum::<ncg_core::Result<_>>()?;
        println!(
            "alpha {alpha}: {} stable trees, worst ratio {} <= bound {}, violations {bad}",
            report.equilibria.len(),
            format_rational(&(worst / opt)),
            format_rational(&bound)
        );
        if let Some(r) = report.trees().next() {
            println!("  e.g. {:?} centroids {:?}", r.network.bought_edges(), centroids(&r.network)?.centroids);
        };
    }
    Ok(())
}
