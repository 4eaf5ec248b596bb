use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::OwnedNetwork;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeviationKind {
    Delete,
    Buy,
    /// Delete one owned edge and buy another in the same move.
    Swap,
    /// A swap together with the deletion of a second owned edge.
    SwapDelete,
    ReplaceWholeStrategy,
}

/// A unilateral strategy change of one agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Deviation {
    pub agent: usize,
    pub kind: DeviationKind,
    pub removed: Vec<usize>,
    pub added: Vec<usize>,
    pub strategy: BTreeSet<usize>,
}

impl Deviation {
    /// Describe the move from `old` to `new`, classifying its shape.
    pub fn between(agent: usize, old: &BTreeSet<usize>, new: BTreeSet<usize>) -> Self {
        let removed: Vec<usize> = old.difference(&new).copied().collect();
        let added: Vec<usize> = new.difference(old).copied().collect();
        let kind = match (removed.len(), added.len()) {
            (1, 0) => DeviationKind::Delete,
            (0, 1) => DeviationKind::Buy,
            (1, 1) => DeviationKind::Swap,
            (2, 1) => DeviationKind::SwapDelete,
            _ => DeviationKind::ReplaceWholeStrategy,
        };
        Deviation { agent, kind, removed, added, strategy: new }
    }

    pub fn delete(net: &OwnedNetwork, agent: usize, target: usize) -> Result<Self> {
        require_owned(net, agent, target)?;
        let mut s = net.strategy(agent).clone();
        s.remove(&target);
        Ok(Self::between(agent, net.strategy(agent), s))
    }

    pub fn buy(net: &OwnedNetwork, agent: usize, target: usize) -> Result<Self> {
        require_new_target(net, agent, target)?;
        let mut s = net.strategy(agent).clone();
        s.insert(target);
        Ok(Self::between(agent, net.strategy(agent), s))
    }

    /// Replace the owned edge `(agent, from)` by `(agent, to)`.
    pub fn swap(net: &OwnedNetwork, agent: usize, from: usize, to: usize) -> Result<Self> {
        require_owned(net, agent, from)?;
        require_new_target(net, agent, to)?;
        let mut s = net.strategy(agent).clone();
        s.remove(&from);
        s.insert(to);
        Ok(Self::between(agent, net.strategy(agent), s))
    }

    /// Swap `(agent, from)` to `(agent, to)` and drop `(agent, dropped)` at the same time.
    pub fn swap_and_delete(net: &OwnedNetwork, agent: usize, from: usize, to: usize, dropped: usize) -> Result<Self> {
        require_owned(net, agent, from)?;
        require_owned(net, agent, dropped)?;
        require_new_target(net, agent, to)?;
        if from == dropped {
            return Err(Error::IllegalStrategy { agent, reason: "swap and deletion must touch distinct edges".into() });
        }
        let mut s = net.strategy(agent).clone();
        s.remove(&from);
        s.remove(&dropped);
        s.insert(to);
        Ok(Self::between(agent, net.strategy(agent), s))
    }

    pub fn replace(net: &OwnedNetwork, agent: usize, strategy: BTreeSet<usize>) -> Self {
        Self::between(agent, net.strategy(agent), strategy)
    }
}

fn require_owned(net: &OwnedNetwork, agent: usize, target: usize) -> Result<()> {
    if agent >= net.n() {
        return Err(Error::IndexOutOfRange { agent, n: net.n() });
    }
    if !net.buys(agent, target) {
        return Err(Error::IllegalStrategy { agent, reason: format!("does not buy the edge to {target}") });
    }
    Ok(())
}

fn require_new_target(net: &OwnedNetwork, agent: usize, target: usize) -> Result<()> {
    if agent >= net.n() || target >= net.n() {
        return Err(Error::IndexOutOfRange { agent: agent.max(target), n: net.n() });
    }
    if agent == target {
        return Err(Error::IllegalStrategy { agent, reason: "cannot buy an edge to itself".into() });
    }
    if net.buys(agent, target) {
        return Err(Error::IllegalStrategy { agent, reason: format!("already buys the edge to {target}") });
    }
    Ok(())
}

/// The network after `d`; the input is left untouched.
pub fn apply_deviation(net: &OwnedNetwork, d: &Deviation) -> Result<OwnedNetwork> {
    if d.strategy.contains(&d.agent) {
        return Err(Error::IllegalStrategy { agent: d.agent, reason: "strategy contains the agent itself".into() });
    }
    net.with_strategy(d.agent, d.strategy.clone())
}
