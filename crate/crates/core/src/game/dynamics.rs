use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::deviation::{apply_deviation, Deviation};
use super::equilibrium::{Game, Mode};
use crate::error::{Error, Result};
use crate::graph::OwnedNetwork;
use crate::rational::Cost;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "seed")]
pub enum Schedule {
    RoundRobin,
    /// A fresh agent permutation every round, drawn from this seed.
    SeededRandom(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DynamicsStep {
    pub round: usize,
    pub deviation: Deviation,
    pub agent_cost: Cost,
    pub social_cost: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trajectory {
    pub steps: Vec<DynamicsStep>,
    pub converged: bool,
    pub rounds: usize,
    #[serde(skip)]
    pub final_network: OwnedNetwork,
}

impl Game {
    /// Let agents play best responses until a full round changes nothing.
    pub fn best_response_dynamics(
        &self,
        start: &OwnedNetwork,
        schedule: Schedule,
        max_rounds: usize,
    ) -> Result<Trajectory> {
        self.dynamics_with_mode(start, schedule, max_rounds, Mode::Exact)
    }

    /// As [`Game::best_response_dynamics`], with the response search space chosen by `mode`.
    pub fn dynamics_with_mode(
        &self,
        start: &OwnedNetwork,
        schedule: Schedule,
        max_rounds: usize,
        mode: Mode,
    ) -> Result<Trajectory> {
        if max_rounds == 0 {
            return Err(Error::DomainError("max_rounds must be at least 1".into()));
        }
        let n = start.n();
        let mut net = start.clone();
        let mut rng = match schedule {
            Schedule::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            Schedule::RoundRobin => None,
        };
        let mut steps = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        for round in 1..=max_rounds {
            if let Some(rng) = rng.as_mut() {
                order.shuffle(rng);
            }
            let mut changed = false;
            for &u in &order {
                let br = self.best_response(&net, u, mode)?;
                if !br.improves() {
                    continue;
                }
                let deviation = Deviation::replace(&net, u, br.strategy.clone());
                net = apply_deviation(&net, &deviation)?;
                changed = true;
                steps.push(DynamicsStep {
                    round,
                    deviation,
                    agent_cost: br.cost,
                    social_cost: self.social_cost(&net),
                });
            }
            if !changed {
                return Ok(Trajectory { steps, converged: true, rounds: round, final_network: net });
            }
        }
        Ok(Trajectory { steps, converged: false, rounds: max_rounds, final_network: net })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Alpha;

    #[test]
    fn equilibrium_is_a_fixed_point() {
        let star = OwnedNetwork::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let game = Game::new(Alpha::integer(10).unwrap());
        let t = game.best_response_dynamics(&star, Schedule::RoundRobin, 5).unwrap();
        assert!(t.converged);
        assert_eq!(t.rounds, 1);
        assert!(t.steps.is_empty());
        assert_eq!(t.final_network, star);
    }

    #[test]
    fn triangle_collapses_to_a_tree() {
        let tri = OwnedNetwork::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let game = Game::new(Alpha::integer(2).unwrap());
        let t = game.best_response_dynamics(&tri, Schedule::RoundRobin, 10).unwrap();
        assert!(t.converged);
        assert!(t.final_network.is_tree());
        assert!(game.is_equilibrium(&t.final_network, Mode::Exact).unwrap().is_stable());
    }

    #[test]
    fn first_mover_connects_a_pair() {
        let game = Game::new(Alpha::integer(1).unwrap());
        let t = game.best_response_dynamics(&OwnedNetwork::empty(2), Schedule::RoundRobin, 5).unwrap();
        assert!(t.converged);
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].deviation.agent, 0);
        assert!(t.final_network.buys(0, 1));
    }

    #[test]
    fn seeded_schedule_is_reproducible() {
        let tri = OwnedNetwork::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let game = Game::new(Alpha::integer(5).unwrap());
        let a = game.best_response_dynamics(&tri, Schedule::SeededRandom(7), 20).unwrap();
        let b = game.best_response_dynamics(&tri, Schedule::SeededRandom(7), 20).unwrap();
        assert_eq!(a, b);
        assert!(game.best_response_dynamics(&tri, Schedule::RoundRobin, 0).is_err());
    }
}
