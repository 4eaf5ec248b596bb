//! Fast evaluation of one agent's distance cost under alternative strategies.
//!
//! With every other purchase fixed, a shortest path from `u` leaves through one
//! neighbour and never comes back, so `d(u, x) = 1 + min_y d_{G-u}(y, x)` over
//! the neighbours `y` of `u`. Distances in `G - u` are computed once; each
//! candidate strategy then costs `O(n * |strategy|)`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use crate::graph::{Dist, OwnedNetwork};
use crate::rational::{Alpha, Cost, Rational};

/// Marks a pair with no path in `G - u`; never escapes this module.
const UNREACHED: u32 = u32::MAX;

pub(crate) struct AgentKernel {
    agent: usize,
    n: usize,
    /// Row-major distances inside `G - agent`.
    apsp: Vec<u32>,
    /// Pointwise minimum over neighbours that bought an edge to `agent`.
    base: Vec<u32>,
    alpha_num: u128,
    alpha_den: u128,
}

/// Exact total cost `alpha * size + dist` scaled by the price denominator,
/// with `None` for infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Scored {
    pub scaled: Option<u128>,
    pub dist: Option<u64>,
    pub targets: Vec<usize>,
}

impl Scored {
    /// Cost, then fewer purchases, then lexicographically smaller target list.
    pub fn key_cmp(&self, other: &Scored) -> Ordering {
        cmp_scaled(self.scaled, other.scaled)
            .then(self.targets.len().cmp(&other.targets.len()))
            .then_with(|| self.targets.cmp(&other.targets))
    }

    pub fn strictly_cheaper(&self, other: &Scored) -> bool {
        cmp_scaled(self.scaled, other.scaled) == Ordering::Less
    }
}

fn cmp_scaled(a: Option<u128>, b: Option<u128>) -> Ordering {
    match (a, b) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

impl AgentKernel {
    pub fn new(net: &OwnedNetwork, agent: usize, alpha: Alpha) -> Self {
        let n = net.n();
        let mut apsp = vec![UNREACHED; n * n];
        let mut queue = VecDeque::new();
        for s in (0..n).filter(|&s| s != agent) {
            let row = &mut apsp[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                let dx = row[x];
                for &y in net.neighbors(x) {
                    if y != agent && row[y] == UNREACHED {
                        row[y] = dx + 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut base = vec![UNREACHED; n];
        for &w in net.neighbors(agent) {
            if net.buys(w, agent) {
                let row = &apsp[w * n..(w + 1) * n];
                for (b, &d) in base.iter_mut().zip(row) {
                    *b = (*b).min(d);
                }
            }
        }
        AgentKernel {
            agent,
            n,
            apsp,
            base,
            alpha_num: alpha.numer() as u128,
            alpha_den: alpha.denom() as u128,
        }
    }

    fn row(&self, t: usize) -> &[u32] {
        &self.apsp[t * self.n..(t + 1) * self.n]
    }

    fn sum_of(&self, mins: &[u32]) -> Option<u64> {
        let mut total = 0u64;
        for (x, &d) in mins.iter().enumerate() {
            if x == self.agent {
                continue;
            }
            if d == UNREACHED {
                return None;
            }
            total += 1 + d as u64;
        }
        Some(total)
    }

    /// Distance cost of the agent if it bought exactly `targets`.
    pub fn distcost(&self, targets: &[usize]) -> Option<u64> {
        let mut mins = self.base.clone();
        for &t in targets {
            for (m, &d) in mins.iter_mut().zip(self.row(t)) {
                *m = (*m).min(d);
            }
        }
        self.sum_of(&mins)
    }

    fn score_with(&self, targets: Vec<usize>, dist: Option<u64>) -> Scored {
        let scaled = dist.map(|d| self.alpha_num * targets.len() as u128 + self.alpha_den * d as u128);
        Scored { scaled, dist, targets }
    }

    pub fn score(&self, targets: Vec<usize>) -> Scored {
        let dist = self.distcost(&targets);
        self.score_with(targets, dist)
    }

    /// Visit every subset of the other agents, depth first.
    pub fn for_each_subset(&self, mut visit: impl FnMut(Scored) -> bool) {
        let candidates: Vec<usize> = (0..self.n).filter(|&x| x != self.agent).collect();
        let mut chosen = Vec::with_capacity(candidates.len());
        let mut stack = vec![self.base.clone()];
        self.subsets_rec(&candidates, 0, &mut chosen, &mut stack, &mut visit);
    }

    fn subsets_rec(
        &self,
        candidates: &[usize],
        idx: usize,
        chosen: &mut Vec<usize>,
        stack: &mut Vec<Vec<u32>>,
        visit: &mut impl FnMut(Scored) -> bool,
    ) -> bool {
        if idx == candidates.len() {
            let dist = self.sum_of(stack.last().unwrap());
            return visit(self.score_with(chosen.clone(), dist));
        }
        if !self.subsets_rec(candidates, idx + 1, chosen, stack, visit) {
            return false;
        }
        let t = candidates[idx];
        let mut next = stack.last().unwrap().clone();
        for (m, &d) in next.iter_mut().zip(self.row(t)) {
            *m = (*m).min(d);
        }
        stack.push(next);
        chosen.push(t);
        let keep_going = self.subsets_rec(candidates, idx + 1, chosen, stack, visit);
        chosen.pop();
        stack.pop();
        keep_going
    }

    /// Strategies reachable by one delete, buy, swap, or swap plus a second deletion.
    pub fn single_moves(&self, current: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let owned: Vec<usize> = current.iter().copied().collect();
        let others: Vec<usize> = (0..self.n).filter(|&x| x != self.agent && !current.contains(&x)).collect();
        let mut out = vec![owned.clone()];
        let without = |drop: &[usize]| -> Vec<usize> { owned.iter().copied().filter(|t| !drop.contains(t)).collect() };
        for &d in &owned {
            out.push(without(&[d]));
        }
        for &b in &others {
            let mut s = owned.clone();
            s.push(b);
            s.sort_unstable();
            out.push(s);
        }
        for &d in &owned {
            for &b in &others {
                let mut s = without(&[d]);
                s.push(b);
                s.sort_unstable();
                out.push(s);
            }
        }
        for (i, &d1) in owned.iter().enumerate() {
            for &d2 in &owned[i + 1..] {
                for &b in &others {
                    let mut s = without(&[d1, d2]);
                    s.push(b);
                    s.sort_unstable();
                    out.push(s);
                }
            }
        }
        out
    }

    pub fn to_cost(&self, s: &Scored) -> Cost {
        match s.scaled {
            Some(v) => Cost::Finite(Rational::new(v as i128, self.alpha_den as i128)),
            None => Cost::Infinite,
        }
    }
}

pub(crate) fn dist_of(d: Option<u64>) -> Dist {
    d.map_or(Dist::Infinite, Dist::Finite)
}
