use std::collections::BTreeSet;

use serde::Serialize;

use super::cost::{agent_cost, social_cost, CostBreakdown};
use super::deviation::Deviation;
use super::kernel::{dist_of, AgentKernel, Scored};
use crate::error::{Error, Result};
use crate::graph::{Dist, OwnedNetwork};
use crate::rational::{Alpha, Cost};

/// Default largest `n` for which exact (all `2^(n-1)` strategies) search runs.
pub const DEFAULT_EXACT_CAP: usize = 12;

/// Which deviations count when searching for a better response.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every subset of the other agents.
    Exact,
    /// One delete, buy or swap, or a swap combined with one extra deletion.
    SingleMove,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Stable,
    Unstable,
}

/// An improving deviation with its exact gain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub deviation: Deviation,
    pub current_cost: Cost,
    pub new_cost: Cost,
    /// `current_cost - new_cost`; infinite when the agent escapes an infinite cost.
    pub improvement: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquilibriumCertificate {
    pub verdict: Verdict,
    pub mode: Mode,
    pub witness: Option<Witness>,
}

impl EquilibriumCertificate {
    pub fn is_stable(&self) -> bool {
        self.verdict == Verdict::Stable
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BestResponse {
    pub agent: usize,
    pub strategy: BTreeSet<usize>,
    pub cost: Cost,
    pub distance: Dist,
    pub current_cost: Cost,
}

impl BestResponse {
    pub fn improves(&self) -> bool {
        self.cost < self.current_cost
    }
}

/// The game at a fixed edge price.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Game {
    alpha: Alpha,
    exact_cap: usize,
}

impl Game {
    pub fn new(alpha: Alpha) -> Self {
        Game { alpha, exact_cap: DEFAULT_EXACT_CAP }
    }

    pub fn with_exact_cap(mut self, cap: usize) -> Self {
        self.exact_cap = cap;
        self
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn exact_cap(&self) -> usize {
        self.exact_cap
    }

    pub fn agent_cost(&self, net: &OwnedNetwork, u: usize) -> CostBreakdown {
        agent_cost(net, self.alpha, u)
    }

    pub fn social_cost(&self, net: &OwnedNetwork) -> Cost {
        social_cost(net, self.alpha)
    }

    fn check_mode(&self, net: &OwnedNetwork, mode: Mode) -> Result<()> {
        if mode == Mode::Exact && net.n() > self.exact_cap {
            return Err(Error::CapExceeded { n: net.n(), cap: self.exact_cap });
        }
        Ok(())
    }

    fn current(&self, kernel: &AgentKernel, net: &OwnedNetwork, u: usize) -> Scored {
        kernel.score(net.strategy(u).iter().copied().collect())
    }

    fn search(&self, kernel: &AgentKernel, net: &OwnedNetwork, u: usize, mode: Mode) -> Scored {
        let mut best = self.current(kernel, net, u);
        match mode {
            Mode::Exact => kernel.for_each_subset(|s| {
                if s.key_cmp(&best).is_lt() {
                    best = s;
                }
                true
            }),
            Mode::SingleMove => {
                for targets in kernel.single_moves(net.strategy(u)) {
                    let s = kernel.score(targets);
                    if s.key_cmp(&best).is_lt() {
                        best = s;
                    }
                }
            }
        }
        best
    }

    /// A cost-minimising strategy for `u` within the mode's search space.
    ///
    /// Ties go to fewer purchases, then to the lexicographically smallest
    /// target list.
    pub fn best_response(&self, net: &OwnedNetwork, u: usize, mode: Mode) -> Result<BestResponse> {
        if u >= net.n() {
            return Err(Error::IndexOutOfRange { agent: u, n: net.n() });
        }
        self.check_mode(net, mode)?;
        let kernel = AgentKernel::new(net, u, self.alpha);
        let current = self.current(&kernel, net, u);
        let best = self.search(&kernel, net, u, mode);
        Ok(BestResponse {
            agent: u,
            strategy: best.targets.iter().copied().collect(),
            cost: kernel.to_cost(&best),
            distance: dist_of(best.dist),
            current_cost: kernel.to_cost(&current),
        })
    }

    /// Whether agent `u` has any strictly cheaper strategy; stops at the first one.
    fn has_improvement(&self, net: &OwnedNetwork, u: usize, mode: Mode) -> bool {
        let kernel = AgentKernel::new(net, u, self.alpha);
        let current = self.current(&kernel, net, u);
        let mut found = false;
        match mode {
            Mode::Exact => kernel.for_each_subset(|s| {
                found = s.strictly_cheaper(&current);
                !found
            }),
            Mode::SingleMove => {
                found = kernel
                    .single_moves(net.strategy(u))
                    .into_iter()
                    .any(|t| kernel.score(t).strictly_cheaper(&current));
            }
        }
        found
    }

    /// First agent (by index) that can strictly improve, if any.
    pub fn first_unstable_agent(&self, net: &OwnedNetwork, mode: Mode) -> Result<Option<usize>> {
        self.check_mode(net, mode)?;
        Ok((0..net.n()).find(|&u| self.has_improvement(net, u, mode)))
    }

    pub fn is_stable(&self, net: &OwnedNetwork, mode: Mode) -> Result<bool> {
        Ok(self.first_unstable_agent(net, mode)?.is_none())
    }

    /// Certify stability; when unstable the witness is the best response of
    /// the lowest-indexed agent that can improve.
    pub fn is_equilibrium(&self, net: &OwnedNetwork, mode: Mode) -> Result<EquilibriumCertificate> {
        let Some(u) = self.first_unstable_agent(net, mode)? else {
            return Ok(EquilibriumCertificate { verdict: Verdict::Stable, mode, witness: None });
        };
        let br = self.best_response(net, u, mode)?;
        let improvement = match (br.current_cost, br.cost) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a - b),
            _ => Cost::Infinite,
        };
        let deviation = Deviation::replace(net, u, br.strategy.clone());
        Ok(EquilibriumCertificate {
            verdict: Verdict::Unstable,
            mode,
            witness: Some(Witness { deviation, current_cost: br.current_cost, new_cost: br.cost, improvement }),
        })
    }
}
