//! Seeded random networks shaped to meet each oracle's hypothesis, and the
//! sampled oracle runs built on them.
//!
//! Samples are drawn in fixed-size chunks, each from its own ChaCha stream,
//! so the results depend only on the seed and never on the worker count.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::equilibria::thread_pool;
use super::oracles::{proof_deviation_oracle, OracleLemma, OracleOutcome};
use crate::error::{Error, Result};
use crate::graph::OwnedNetwork;
use crate::rational::Alpha;

const CHUNK: usize = 250;
/// Draws allowed per requested sample before a chunk gives up.
const ATTEMPTS_PER_SAMPLE: usize = 200;
/// Failing instances kept in a report.
const KEPT_FAILURES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleFailure {
    pub network: OwnedNetwork,
    pub outcome: OracleOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub lemma: OracleLemma,
    pub n: usize,
    pub alpha: Alpha,
    pub seed: u64,
    pub requested: usize,
    /// Samples that met the hypothesis and were checked.
    pub matched: usize,
    pub attempts: usize,
    /// Checked samples where some prescribed deviation improves.
    pub improving: usize,
    pub failure_count: usize,
    /// The first few failing samples.
    pub failures: Vec<OracleFailure>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.matched == self.requested
    }
}

/// Random relabelling of a network.
fn shuffled(rng: &mut ChaCha8Rng, net: &OwnedNetwork) -> OwnedNetwork {
    let mut perm: Vec<usize> = (0..net.n()).collect();
    perm.shuffle(rng);
    net.relabel(&perm)
}

/// Connected network grown from a fixed core: the other vertices hang off
/// random earlier ones, `extra` random chords follow, and every edge without
/// a forced owner gets a random one (both ends with probability `both`).
fn grow(
    rng: &mut ChaCha8Rng,
    n: usize,
    core_size: usize,
    core: &[(usize, usize, Option<usize>)],
    extra: usize,
    both: f64,
) -> OwnedNetwork {
    let mut edges: Vec<(usize, usize, Option<usize>)> = core.to_vec();
    let has = |edges: &[(usize, usize, Option<usize>)], a: usize, b: usize| {
        edges.iter().any(|&(x, y, _)| (x, y) == (a, b) || (x, y) == (b, a))
    };
    for v in core_size..n {
        edges.push((rng.gen_range(0..v), v, None));
    }
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && !has(&edges, a, b) {
            edges.push((a, b, None));
        }
    }
    let mut bought = Vec::new();
    for (a, b, owner) in edges {
        match owner {
            Some(o) => bought.push(if o == a { (a, b) } else { (b, a) }),
            None if rng.gen_bool(both) => bought.extend([(a, b), (b, a)]),
            None if rng.gen_bool(0.5) => bought.push((a, b)),
            None => bought.push((b, a)),
        }
    }
    let net = OwnedNetwork::new(n, &bought).expect("generated edges are valid");
    shuffled(rng, &net)
}

fn cycle_core(len: usize) -> Vec<(usize, usize, Option<usize>)> {
    (0..len).map(|i| (i, (i + 1) % len, None)).collect()
}

/// Smallest `n` each generator supports.
pub fn min_sample_n(lemma: OracleLemma) -> usize {
    match lemma {
        OracleLemma::L1 | OracleLemma::L4 => 3,
        OracleLemma::L2 | OracleLemma::T1 => 4,
        OracleLemma::L5 => 5,
    }
}

/// One random network shaped towards `lemma`'s hypothesis; it may still miss it.
pub fn sample_network(lemma: OracleLemma, n: usize, rng: &mut ChaCha8Rng) -> Result<OwnedNetwork> {
    let min = min_sample_n(lemma);
    if n < min || n > 64 {
        return Err(Error::DomainError(format!("{lemma} samples need {min} <= n <= 64, got {n}")));
    }
    let extra = rng.gen_range(0..=2);
    let few = rng.gen_range(0..=1);
    Ok(match lemma {
        OracleLemma::L1 => grow(rng, n, 3, &cycle_core(3), extra, 0.05),
        OracleLemma::L2 => {
            let mut core = cycle_core(4);
            if rng.gen_bool(0.5) {
                // Directed: i buys (i, i+1).
                core.iter_mut().for_each(|e| e.2 = Some(e.0));
            }
            grow(rng, n, 4, &core, extra, 0.05)
        }
        OracleLemma::L4 => {
            let len = rng.gen_range(3..=n);
            grow(rng, n, len, &cycle_core(len), extra + few, 0.05)
        }
        OracleLemma::L5 => {
            let len = rng.gen_range(5..=n);
            let mut core = cycle_core(len);
            core[0].2 = Some(0);
            core[len - 1].2 = Some(0);
            grow(rng, n, len, &core, few, 0.02)
        }
        OracleLemma::T1 => {
            let (core_size, core) = theta(rng, n);
            grow(rng, n, core_size, &core, few, 0.02)
        }
    })
}

/// Two hubs joined by three internally disjoint paths, at most one of them a
/// bare edge; hub 0 buys the first edge of two of the paths half the time.
fn theta(rng: &mut ChaCha8Rng, n: usize) -> (usize, Vec<(usize, usize, Option<usize>)>) {
    loop {
        let budget = rng.gen_range(2..=n - 2);
        let mut k = [0usize; 3];
        for _ in 0..budget {
            k[rng.gen_range(0..3)] += 1;
        }
        if k.iter().filter(|&&x| x == 0).count() > 1 {
            continue;
        }
        let force = rng.gen_bool(0.5);
        let mut core = Vec::new();
        let mut next = 2;
        for (p, &len) in k.iter().enumerate() {
            let mut prev = 0;
            for i in 0..len {
                let owner = (force && i == 0 && p < 2).then_some(0);
                core.push((prev, next, owner));
                prev = next;
                next += 1;
            }
            core.push((prev, 1, None));
        }
        return (next, core);
    }
}

/// Draw samples until `count` meet the hypothesis and run the oracle on each.
pub fn run_oracle_samples(
    lemma: OracleLemma,
    n: usize,
    alpha: Option<Alpha>,
    count: usize,
    seed: u64,
    workers: usize,
) -> Result<OracleReport> {
    let alpha = match alpha {
        Some(a) => a,
        None => lemma.default_alpha(n)?,
    };
    let chunks = count.div_ceil(CHUNK);
    let pool = thread_pool(workers.max(1))?;
    let results: Vec<Result<ChunkResult>> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| run_chunk(lemma, n, alpha, seed, c, CHUNK.min(count - c * CHUNK)))
            .collect()
    });
    let mut report = OracleReport {
        lemma,
        n,
        alpha,
        seed,
        requested: count,
        matched: 0,
        attempts: 0,
        improving: 0,
        failure_count: 0,
        failures: Vec::new(),
    };
    for r in results {
        let r = r?;
        report.matched += r.matched;
        report.attempts += r.attempts;
        report.improving += r.improving;
        report.failure_count += r.failures.len();
        for f in r.failures {
            if report.failures.len() < KEPT_FAILURES {
                report.failures.push(f);
            }
        }
    }
    Ok(report)
}

struct ChunkResult {
    matched: usize,
    attempts: usize,
    improving: usize,
    failures: Vec<OracleFailure>,
}

fn run_chunk(lemma: OracleLemma, n: usize, alpha: Alpha, seed: u64, chunk: usize, quota: usize) -> Result<ChunkResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    let mut out = ChunkResult { matched: 0, attempts: 0, improving: 0, failures: Vec::new() };
    while out.matched < quota && out.attempts < quota * ATTEMPTS_PER_SAMPLE {
        out.attempts += 1;
        let net = sample_network(lemma, n, &mut rng)?;
        let outcome = match proof_deviation_oracle(lemma, &net, alpha) {
            Ok(o) => o,
            Err(Error::HypothesisUnmet(_)) => continue,
            Err(e) => return Err(e),
        };
        out.matched += 1;
        out.improving += usize::from(outcome.improving);
        if !outcome.bound_holds {
            out.failures.push(OracleFailure { network: net, outcome });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_connected_and_sized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for lemma in OracleLemma::ALL {
            for n in min_sample_n(lemma)..=9 {
                for _ in 0..20 {
                    let net = sample_network(lemma, n, &mut rng).unwrap();
                    assert_eq!(net.n(), n);
                    assert!(net.is_connected());
                }
            }
        }
        assert!(sample_network(OracleLemma::L5, 4, &mut rng).is_err());
    }

    #[test]
    fn every_lemma_finds_instances() {
        for lemma in OracleLemma::ALL {
            let r = run_oracle_samples(lemma, 7, None, 300, 1, 2).unwrap();
            assert!(r.passed(), "{lemma}: {:?}", r.failures.first());
            assert!(r.improving == r.matched || lemma == OracleLemma::L4);
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let a = run_oracle_samples(OracleLemma::T1, 6, None, 600, 3, 1).unwrap();
        let b = run_oracle_samples(OracleLemma::T1, 6, None, 600, 3, 4).unwrap();
        assert_eq!(a, b);
    }
}
