use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::canon::{canonical_network, CanonicalKey};
use super::enumerate::{EnumerationSpec, Space};
use crate::error::{Error, Result};
use crate::game::{EquilibriumCertificate, Game, Mode};
use crate::graph::OwnedNetwork;
use crate::rational::{int, Alpha, Cost};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquilibriumRecord {
    pub key: CanonicalKey,
    pub network: OwnedNetwork,
    pub social_cost: Cost,
    pub is_tree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquilibriaReport {
    pub n: usize,
    pub alpha: Alpha,
    pub mode: Mode,
    pub space: Space,
    pub dedupe: bool,
    pub profiles_examined: u64,
    /// Sorted by canonical key, then by labelled network.
    pub equilibria: Vec<EquilibriumRecord>,
    pub non_trees: usize,
}

impl EquilibriaReport {
    pub fn trees(&self) -> impl Iterator<Item = &EquilibriumRecord> {
        self.equilibria.iter().filter(|r| r.is_tree)
    }
}

/// Stability under `mode`, short-circuiting the cases that never survive:
/// for `n >= 2` a disconnected agent always gains, and at a positive price
/// an edge bought from both sides wastes one purchase.
pub fn is_stable_fast(game: &Game, net: &OwnedNetwork, mode: Mode) -> Result<bool> {
    if net.n() >= 2 && !net.is_connected() {
        return Ok(false);
    }
    if game.alpha().value() > int(0) && net.has_double_purchase() {
        return Ok(false);
    }
    game.is_stable(net, mode)
}

pub(crate) fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::DomainError(format!("cannot start {workers} workers: {e}")))
}

/// All stable profiles of an enumeration at one price.
pub fn find_equilibria(spec: &EnumerationSpec, alpha: Alpha) -> Result<EquilibriaReport> {
    let units = spec.units()?;
    let game = Game::new(alpha);
    let pool = thread_pool(spec.workers)?;
    let per_unit: Vec<Result<(u64, Vec<OwnedNetwork>)>> = pool.install(|| {
        units
            .par_iter()
            .map(|unit| {
                let mut examined = 0u64;
                let mut found = Vec::new();
                for net in spec.unit_profiles(unit) {
                    examined += 1;
                    if is_stable_fast(&game, &net, spec.mode)? {
                        found.push(net);
                    }
                }
                Ok((examined, found))
            })
            .collect()
    });
    let mut profiles_examined = 0;
    let mut equilibria = Vec::new();
    let mut seen = BTreeSet::new();
    for r in per_unit {
        let (examined, found) = r?;
        profiles_examined += examined;
        for net in found {
            let (key, rep) = canonical_network(&net);
            let network = if spec.dedupe {
                if !seen.insert(key.clone()) {
                    continue;
                }
                rep
            } else {
                net
            };
            let social_cost = game.social_cost(&network);
            equilibria.push(EquilibriumRecord { key, is_tree: network.is_tree(), network, social_cost });
        }
    }
    equilibria.sort_by(|a, b| (&a.key, &a.network).cmp(&(&b.key, &b.network)));
    let non_trees = equilibria.iter().filter(|r| !r.is_tree).count();
    Ok(EquilibriaReport {
        n: spec.n,
        alpha,
        mode: spec.mode,
        space: spec.space,
        dedupe: spec.dedupe,
        profiles_examined,
        equilibria,
        non_trees,
    })
}

/// Re-certify a record from scratch.
pub fn recertify(record: &EquilibriumRecord, alpha: Alpha, mode: Mode) -> Result<EquilibriumCertificate> {
    Game::new(alpha).is_equilibrium(&record.network, mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(s: &str) -> Alpha {
        s.parse().unwrap()
    }

    #[test]
    fn two_agents() {
        let spec = EnumerationSpec::new(2, Space::ProfileSpace);
        let r = find_equilibria(&spec, alpha("1")).unwrap();
        assert_eq!(r.profiles_examined, 4);
        let nets: Vec<_> = r.equilibria.iter().map(|e| e.network.bought_edges()).collect();
        assert_eq!(nets, vec![vec![(1, 0)], vec![(0, 1)]]);
    }

    #[test]
    fn cheap_triangle_is_stable() {
        let spec = EnumerationSpec::new(3, Space::ProfileSpace);
        let r = find_equilibria(&spec, alpha("0.4")).unwrap();
        let tri = OwnedNetwork::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(r.equilibria.iter().any(|e| e.network == tri));
        assert!(r.non_trees > 0);
    }

    #[test]
    fn expensive_edges_give_trees() {
        let spec = EnumerationSpec::new(4, Space::ProfileSpace);
        let r = find_equilibria(&spec, alpha("10")).unwrap();
        assert!(!r.equilibria.is_empty());
        assert_eq!(r.non_trees, 0);
        for e in &r.equilibria {
            assert!(recertify(e, alpha("10"), Mode::Exact).unwrap().is_stable());
        }
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let spec = EnumerationSpec::new(4, Space::GraphFirst);
        let one = find_equilibria(&spec.clone().with_workers(1), alpha("2")).unwrap();
        let many = find_equilibria(&spec.with_workers(4), alpha("2")).unwrap();
        assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&many).unwrap());
    }
}
