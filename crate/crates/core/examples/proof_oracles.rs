//! Rebuild the explicit deviations behind each threshold on a concrete
//! network and on sampled ones, and check the cost bounds they promise.

use ncg_core::graph::OwnedNetwork;
use ncg_core::harness::{proof_deviation_oracle, run_oracle_samples, OracleLemma};

fn main() -> ncg_core::Result<()> {
    let theta = OwnedNetwork::new(7, &[(0, 1), (0, 3), (0, 5), (0, 6), (1, 4), (1, 6), (3, 2), (4, 2), (5, 6)])?;
    let outcome = proof_deviation_oracle(OracleLemma::T1, &theta, "31/2".parse()?)?;
    println!("{}", outcome.witness);
    for d in &outcome.deviations {
        println!("  {:<12} cost {} -> {}, improving {}", d.label, d.cost_before, d.cost_after, d.improving);
    }
    for c in &outcome.checks {
        println!("  {:<40} {} <= {}: {}", c.name, c.lhs, c.rhs, c.holds);
    }
    for lemma in OracleLemma::ALL {
        let r = run_oracle_samples(lemma, 8, None, 500, 1, 1)?;
        println!(
            "{lemma} n=8 alpha {}: {} instances, {} improving, {} bound failures",
            r.alpha, r.matched, r.improving, r.failure_count
        );
    }
    Ok(())
}
