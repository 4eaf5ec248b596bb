//! Randomized search for stable networks that are not trees: random connected
//! starting profiles are improved by response dynamics and the non-tree end
//! points are kept as candidates.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::canon::{canonical_network, CanonicalKey};
use super::equilibria::thread_pool;
use crate::error::Result;
use crate::game::{Game, Mode, Schedule, DEFAULT_EXACT_CAP};
use crate::graph::OwnedNetwork;
use crate::rational::{Alpha, Cost};

const CHUNK: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchCandidate {
    pub key: CanonicalKey,
    pub network: OwnedNetwork,
    pub social_cost: Cost,
    /// Index of the first start that ended here.
    pub first_start: usize,
    pub hits: usize,
    /// Exact stability, when `n` is within the exact cap.
    pub exact_stable: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub alpha: Alpha,
    pub mode: Mode,
    pub seed: u64,
    pub budget: usize,
    pub max_rounds: usize,
    pub converged: usize,
    pub converged_trees: usize,
    /// Non-tree end points, one per isomorphism class, sorted by key.
    pub candidates: Vec<SearchCandidate>,
}

/// A random connected profile: a random spanning tree plus each further
/// pair with a probability drawn per start, every edge with a random owner.
/// Starting connected matters because no improving move ever disconnects,
/// while single moves cannot reconnect three or more components.
fn random_profile(rng: &mut ChaCha8Rng, n: usize) -> OwnedNetwork {
    let p = rng.gen_range(0.0..0.5);
    let mut pairs = Vec::new();
    for b in 1..n {
        pairs.push((rng.gen_range(0..b), b));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !pairs.contains(&(a, b)) && rng.gen_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    let bought: Vec<(usize, usize)> =
        pairs.into_iter().map(|(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) }).collect();
    OwnedNetwork::new(n, &bought).expect("valid purchases")
}

/// Run `budget` seeded starts through response dynamics under `mode` and
/// collect the stable end points that are not trees.
pub fn counterexample_search(
    n: usize,
    alpha: Alpha,
    budget: usize,
    seed: u64,
    mode: Mode,
    workers: usize,
) -> Result<SearchReport> {
    let game = Game::new(alpha);
    let max_rounds = 10 * n.max(1);
    let pool = thread_pool(workers.max(1))?;
    let chunks = budget.div_ceil(CHUNK);
    let ends: Vec<Result<Vec<(usize, OwnedNetwork)>>> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(c as u64);
                let mut out = Vec::new();
                for i in c * CHUNK..budget.min((c + 1) * CHUNK) {
                    let start = random_profile(&mut rng, n);
                    let t = game.dynamics_with_mode(&start, Schedule::SeededRandom(rng.gen()), max_rounds, mode)?;
                    if t.converged {
                        out.push((i, t.final_network));
                    }
                }
                Ok(out)
            })
            .collect()
    });
    let mut converged = 0;
    let mut converged_trees = 0;
    let mut found: BTreeMap<CanonicalKey, SearchCandidate> = BTreeMap::new();
    for chunk in ends {
        for (i, net) in chunk? {
            converged += 1;
            if net.is_tree() {
                converged_trees += 1;
                continue;
            }
            let (key, rep) = canonical_network(&net);
            found
                .entry(key.clone())
                .and_modify(|c| c.hits += 1)
                .or_insert_with(|| SearchCandidate {
                    key,
                    social_cost: game.social_cost(&rep),
                    network: rep,
                    first_start: i,
                    hits: 1,
                    exact_stable: None,
                });
        }
    }
    let mut candidates: Vec<SearchCandidate> = found.into_values().collect();
    if n <= DEFAULT_EXACT_CAP {
        for c in &mut candidates {
            c.exact_stable = Some(game.is_stable(&c.network, Mode::Exact)?);
        }
    }
    Ok(SearchReport { n, alpha, mode, seed, budget, max_rounds, converged, converged_trees, candidates })
}
