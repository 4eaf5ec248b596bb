use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Undirected edge, stored with the smaller endpoint first.
pub type Edge = (usize, usize);

pub fn edge(a: usize, b: usize) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A strategy profile: every agent's set of bought targets, together with the
/// simple undirected graph it induces.
///
/// Profiles where both endpoints buy the same edge are representable; the
/// induced graph still holds the edge once while both purchases are paid for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OwnedNetwork {
    strategies: Vec<BTreeSet<usize>>,
    adjacency: Vec<Vec<usize>>,
}

impl OwnedNetwork {
    /// Build a network from `(owner, target)` purchases. Duplicates collapse.
    pub fn new(n: usize, bought_edges: &[(usize, usize)]) -> Result<Self> {
        let mut strategies = vec![BTreeSet::new(); n];
        for &(owner, target) in bought_edges {
            check_agent(owner, n)?;
            check_agent(target, n)?;
            if owner == target {
                return Err(Error::SelfLoop(owner));
            }
            strategies[owner].insert(target);
        }
        Ok(Self::from_valid(strategies))
    }

    pub fn from_strategies(strategies: Vec<BTreeSet<usize>>) -> Result<Self> {
        let n = strategies.len();
        for (u, s) in strategies.iter().enumerate() {
            for &t in s {
                check_agent(t, n)?;
                if t == u {
                    return Err(Error::SelfLoop(u));
                }
            }
        }
        Ok(Self::from_valid(strategies))
    }

    /// `n` isolated agents.
    pub fn empty(n: usize) -> Self {
        Self::from_valid(vec![BTreeSet::new(); n])
    }

    pub(crate) fn from_valid(strategies: Vec<BTreeSet<usize>>) -> Self {
        let n = strategies.len();
        let mut adjacency = vec![Vec::new(); n];
        for (u, s) in strategies.iter().enumerate() {
            for &t in s {
                adjacency[u].push(t);
                adjacency[t].push(u);
            }
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        OwnedNetwork { strategies, adjacency }
    }

    pub fn n(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategy(&self, u: usize) -> &BTreeSet<usize> {
        &self.strategies[u]
    }

    pub fn strategies(&self) -> &[BTreeSet<usize>] {
        &self.strategies
    }

    /// Whether `u` pays for the edge towards `v`.
    pub fn buys(&self, u: usize, v: usize) -> bool {
        self.strategies[u].contains(&v)
    }

    /// Sorted neighbours in the induced graph.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges of the induced graph, each as `(low, high)`, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Total number of purchases, counting double-bought edges twice.
    pub fn purchases(&self) -> usize {
        self.strategies.iter().map(BTreeSet::len).sum()
    }

    /// Agents paying for edge `(a, b)`.
    pub fn owners(&self, a: usize, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        if self.buys(a, b) {
            out.push(a);
        }
        if self.buys(b, a) {
            out.push(b);
        }
        out.sort_unstable();
        out
    }

    /// All `(owner, target)` purchases in sorted order.
    pub fn bought_edges(&self) -> Vec<(usize, usize)> {
        self.strategies
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&t| (u, t)))
            .collect()
    }

    pub fn has_double_purchase(&self) -> bool {
        self.bought_edges().iter().any(|&(u, t)| self.buys(t, u))
    }

    /// Same profile with agent `u`'s strategy replaced.
    pub fn with_strategy(&self, u: usize, strategy: BTreeSet<usize>) -> Result<Self> {
        let n = self.n();
        check_agent(u, n)?;
        for &t in &strategy {
            check_agent(t, n)?;
            if t == u {
                return Err(Error::IllegalStrategy {
                    agent: u,
                    reason: "strategy contains the agent itself".into(),
                });
            }
        }
        let mut strategies = self.strategies.clone();
        strategies[u] = strategy;
        Ok(Self::from_valid(strategies))
    }

    pub fn component_count(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.component_count() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    /// Rename agent `i` to `perm[i]`, keeping ownership.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut strategies = vec![BTreeSet::new(); self.n()];
        for (u, s) in self.strategies.iter().enumerate() {
            strategies[perm[u]] = s.iter().map(|&t| perm[t]).collect();
        }
        Self::from_valid(strategies)
    }
}

impl serde::Serialize for OwnedNetwork {
    /// `{"n": .., "purchases": [[owner, target], ..]}`
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OwnedNetwork", 2)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("purchases", &self.bought_edges())?;
        st.end()
    }
}

fn check_agent(a: usize, n: usize) -> Result<()> {
    if a >= n {
        Err(Error::IndexOutOfRange { agent: a, n })
    } else {
        Ok(())
    }
}
