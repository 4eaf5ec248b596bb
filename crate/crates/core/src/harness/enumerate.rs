//! Exhaustive generation of strategy profiles.
//!
//! Profile space runs every agent over every target subset. Graph-first runs
//! over connected graphs and gives each edge exactly one owner; profiles with
//! an edge bought from both sides are skipped there because they are never
//! stable at a positive price. Unlabelled graphs come from vertex
//! augmentation with canonical dedupe.

use std::collections::BTreeSet;

use serde::Serialize;

use super::canon::{canonical_graph, canonical_network, SimpleGraph};
use crate::error::{Error, Result};
use crate::game::{Mode, DEFAULT_EXACT_CAP};
use crate::graph::OwnedNetwork;
use crate::rational::Alpha;

pub const PROFILE_SPACE_CAP: usize = 5;
/// Labelled graph-first enumeration.
pub const LABELED_GRAPH_CAP: usize = 5;
/// Graph-first enumeration up to relabelling.
pub const UNLABELED_GRAPH_CAP: usize = 6;
pub const TREE_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    /// Every agent independently over all `2^(n-1)` target subsets.
    ProfileSpace,
    /// Connected graphs with one owner per edge.
    GraphFirst,
    /// Trees with one owner per edge.
    Trees,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationSpec {
    pub n: usize,
    pub alphas: Vec<Alpha>,
    pub mode: Mode,
    pub space: Space,
    /// Profile space only; the other spaces are connected by construction.
    pub connected_only: bool,
    /// Keep one representative per isomorphism class (ownership included).
    pub dedupe: bool,
    pub workers: usize,
}

impl EnumerationSpec {
    pub fn new(n: usize, space: Space) -> Self {
        EnumerationSpec {
            n,
            alphas: Vec::new(),
            mode: Mode::Exact,
            space,
            connected_only: false,
            dedupe: space != Space::ProfileSpace,
            workers: 1,
        }
    }

    pub fn with_alphas(mut self, alphas: Vec<Alpha>) -> Self {
        self.alphas = alphas;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_dedupe(mut self, dedupe: bool) -> Self {
        self.dedupe = dedupe;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn connected_only(mut self, on: bool) -> Self {
        self.connected_only = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let cap = match (self.space, self.dedupe) {
            (Space::ProfileSpace, _) => PROFILE_SPACE_CAP,
            (Space::GraphFirst, false) => LABELED_GRAPH_CAP,
            (Space::GraphFirst, true) => UNLABELED_GRAPH_CAP,
            (Space::Trees, _) => TREE_CAP,
        };
        if self.n > cap {
            return Err(Error::CapExceeded { n: self.n, cap });
        }
        if self.mode == Mode::Exact && self.n > DEFAULT_EXACT_CAP {
            return Err(Error::CapExceeded { n: self.n, cap: DEFAULT_EXACT_CAP });
        }
        if self.n == 0 {
            return Err(Error::DomainError("n must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::DomainError("worker count must be at least 1".into()));
        }
        Ok(())
    }

    /// Independent slices of the space, in a fixed order.
    pub(crate) fn units(&self) -> Result<Vec<Unit>> {
        self.validate()?;
        Ok(match self.space {
            Space::ProfileSpace => (0..1u32 << (self.n - 1)).map(Unit::FirstAgent).collect(),
            Space::GraphFirst if self.dedupe => connected_graphs(self.n).into_iter().map(Unit::Graph).collect(),
            Space::GraphFirst => labeled_connected_graphs(self.n).into_iter().map(Unit::Graph).collect(),
            Space::Trees => trees(self.n).into_iter().map(Unit::Graph).collect(),
        })
    }

    /// Profiles of one unit. Dedupe here is local to a graph; profile-space
    /// dedupe happens after filtering.
    pub(crate) fn unit_profiles<'a>(&'a self, unit: &'a Unit) -> Box<dyn Iterator<Item = OwnedNetwork> + Send + 'a> {
        match unit {
            Unit::FirstAgent(mask) => {
                let connected_only = self.connected_only;
                Box::new(
                    ProfilesWithFirst::new(self.n, *mask).filter(move |net| !connected_only || net.is_connected()),
                )
            }
            Unit::Graph(g) if self.dedupe => {
                let mut seen = BTreeSet::new();
                let reps: Vec<OwnedNetwork> = orientations(g)
                    .filter_map(|net| {
                        let (key, rep) = canonical_network(&net);
                        seen.insert(key).then_some(rep)
                    })
                    .collect();
                Box::new(reps.into_iter())
            }
            Unit::Graph(g) => Box::new(orientations(g)),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Unit {
    FirstAgent(u32),
    Graph(SimpleGraph),
}

/// Every profile of an enumeration, in the order the parallel runs use.
pub fn enumerate_profiles(spec: &EnumerationSpec) -> Result<Vec<OwnedNetwork>> {
    let units = spec.units()?;
    let mut out: Vec<OwnedNetwork> = units.iter().flat_map(|u| spec.unit_profiles(u)).collect();
    if spec.dedupe && spec.space == Space::ProfileSpace {
        let mut seen = BTreeSet::new();
        out = out
            .into_iter()
            .filter_map(|net| {
                let (key, rep) = canonical_network(&net);
                seen.insert(key).then_some(rep)
            })
            .collect();
    }
    Ok(out)
}

/// `2^(n-1)` choices per agent; agent 0 fixed to `first`.
struct ProfilesWithFirst {
    n: usize,
    masks: Vec<u32>,
    done: bool,
}

impl ProfilesWithFirst {
    fn new(n: usize, first: u32) -> Self {
        let mut masks = vec![0; n];
        masks[0] = first;
        ProfilesWithFirst { n, masks, done: false }
    }

    fn network(&self) -> OwnedNetwork {
        let strategies = (0..self.n)
            .map(|u| {
                let others = (0..self.n).filter(|&x| x != u);
                others.enumerate().filter(|(i, _)| self.masks[u] >> i & 1 == 1).map(|(_, x)| x).collect()
            })
            .collect();
        OwnedNetwork::from_strategies(strategies).expect("targets are in range and not the agent")
    }
}

impl Iterator for ProfilesWithFirst {
    type Item = OwnedNetwork;

    fn next(&mut self) -> Option<OwnedNetwork> {
        if self.done {
            return None;
        }
        let net = self.network();
        // Odometer over agents 1..n.
        let limit = 1u32 << (self.n - 1);
        let mut i = 1;
        loop {
            if i == self.n {
                self.done = true;
                break;
            }
            self.masks[i] += 1;
            if self.masks[i] < limit {
                break;
            }
            self.masks[i] = 0;
            i += 1;
        }
        Some(net)
    }
}

/// Every way of giving each edge of `g` a single owner.
pub fn orientations(g: &SimpleGraph) -> impl Iterator<Item = OwnedNetwork> + Send + '_ {
    let edges = g.edges();
    let m = edges.len();
    let n = g.n();
    (0..1u64 << m).map(move |mask| {
        let bought: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a) } else { (a, b) })
            .collect();
        OwnedNetwork::new(n, &bought).expect("graph edges are valid purchases")
    })
}

fn augment(prev: &[SimpleGraph], masks: impl Fn(usize) -> Vec<u32>) -> Vec<SimpleGraph> {
    let mut seen = BTreeSet::new();
    for g in prev {
        for mask in masks(g.n()) {
            seen.insert(canonical_graph(&g.with_vertex(mask)));
        }
    }
    seen.into_iter().map(|(_, g)| g).collect()
}

/// Every graph on `n` vertices up to isomorphism, canonically labelled.
pub fn all_graphs(n: usize) -> Vec<SimpleGraph> {
    let mut level = vec![SimpleGraph::empty(0)];
    for _ in 0..n {
        level = augment(&level, |k| (0..1u32 << k).collect());
    }
    level
}

/// Connected graphs up to isomorphism. Deleting a leaf of a spanning tree
/// keeps a graph connected, so each one extends a smaller connected graph.
pub fn connected_graphs(n: usize) -> Vec<SimpleGraph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![SimpleGraph::empty(1)];
    for _ in 1..n {
        level = augment(&level, |k| (1..1u32 << k).collect());
    }
    level
}

/// Trees up to isomorphism, grown one leaf at a time.
pub fn trees(n: usize) -> Vec<SimpleGraph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![SimpleGraph::empty(1)];
    for _ in 1..n {
        level = augment(&level, |k| (0..k).map(|v| 1u32 << v).collect());
    }
    level
}

/// Connected graphs on the labelled vertex set `0..n`.
pub fn labeled_connected_graphs(n: usize) -> Vec<SimpleGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            let chosen: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            SimpleGraph::from_edges(n, &chosen)
        })
        .filter(SimpleGraph::is_connected)
        .collect()
}
