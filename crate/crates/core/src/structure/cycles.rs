use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge, BiconnectedComponent, DistanceMatrix, OwnedNetwork};

/// A cycle as an ordered vertex list, with ownership and shape flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinCycleRecord {
    pub vertices: Vec<usize>,
    /// `owners[i]`: who bought the edge `(vertices[i], vertices[i+1 mod k])`.
    pub owners: Vec<Vec<usize>>,
    pub is_min: bool,
    pub is_directed: bool,
    pub length: usize,
}

impl MinCycleRecord {
    pub fn from_cycle(net: &OwnedNetwork, cycle: &[usize]) -> Result<Self> {
        Self::from_cycle_with(net, &DistanceMatrix::new(net), cycle)
    }

    pub fn from_cycle_with(net: &OwnedNetwork, dm: &DistanceMatrix, cycle: &[usize]) -> Result<Self> {
        validate_cycle(net, cycle)?;
        let k = cycle.len();
        Ok(MinCycleRecord {
            vertices: cycle.to_vec(),
            owners: (0..k).map(|i| net.owners(cycle[i], cycle[(i + 1) % k])).collect(),
            is_min: min_check(dm, cycle),
            is_directed: directed_orientation(net, cycle).is_some(),
            length: k,
        })
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        let k = self.length;
        (0..k).any(|i| edge(self.vertices[i], self.vertices[(i + 1) % k]) == edge(a, b))
    }
}

pub(crate) fn validate_cycle(net: &OwnedNetwork, cycle: &[usize]) -> Result<()> {
    let k = cycle.len();
    if k < 3 {
        return Err(Error::NotACycle(format!("{k} vertices")));
    }
    let mut seen = BTreeSet::new();
    for &c in cycle {
        if c >= net.n() {
            return Err(Error::IndexOutOfRange { agent: c, n: net.n() });
        }
        if !seen.insert(c) {
            return Err(Error::NotACycle(format!("vertex {c} repeats")));
        }
    }
    for i in 0..k {
        let (a, b) = (cycle[i], cycle[(i + 1) % k]);
        if !net.has_edge(a, b) {
            return Err(Error::NotACycle(format!("{a} and {b} are not adjacent")));
        }
    }
    Ok(())
}

fn min_check(dm: &DistanceMatrix, cycle: &[usize]) -> bool {
    let k = cycle.len();
    for i in 0..k {
        for j in i + 1..k {
            let along = (j - i).min(k - (j - i)) as u64;
            if dm.get(cycle[i], cycle[j]).finite() != Some(along) {
                return false;
            }
        }
    }
    true
}

/// Whether distances along the cycle equal distances in the whole network.
pub fn is_min_cycle(net: &OwnedNetwork, cycle: &[usize]) -> Result<bool> {
    validate_cycle(net, cycle)?;
    Ok(min_check(&DistanceMatrix::new(net), cycle))
}

/// Whether every vertex buys exactly its successor edge in one of the two directions.
pub fn is_directed_cycle(net: &OwnedNetwork, cycle: &[usize]) -> Result<bool> {
    validate_cycle(net, cycle)?;
    Ok(directed_orientation(net, cycle).is_some())
}

/// The cycle listed so that each vertex buys the edge to the next one and not
/// the edge to the previous one, starting from `cycle[0]`.
pub fn directed_orientation(net: &OwnedNetwork, cycle: &[usize]) -> Option<Vec<usize>> {
    let k = cycle.len();
    let forward = |c: &[usize]| (0..k).all(|i| net.buys(c[i], c[(i + 1) % k]) && !net.buys(c[(i + 1) % k], c[i]));
    if forward(cycle) {
        return Some(cycle.to_vec());
    }
    let mut rev = vec![cycle[0]];
    rev.extend(cycle[1..].iter().rev());
    forward(&rev).then_some(rev)
}

/// A shortest cycle through `e` inside `component`: a shortest path between
/// the endpoints that avoids `e`, closed by `e`. The list starts `[a, b, ...]`.
pub fn min_cycle_through_edge(
    net: &OwnedNetwork,
    component: &BiconnectedComponent,
    e: (usize, usize),
) -> Result<MinCycleRecord> {
    let (a, b) = e;
    if !component.contains_edge(a, b) {
        return Err(Error::NotACycle(format!("edge ({a}, {b}) is not in the component")));
    }
    let n = net.n();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[b] = true;
    let mut queue = VecDeque::from([b]);
    while let Some(x) = queue.pop_front() {
        if x == a {
            break;
        }
        for &y in net.neighbors(x) {
            if seen[y] || edge(x, y) == edge(a, b) || !component.contains_edge(x, y) {
                continue;
            }
            seen[y] = true;
            parent[y] = Some(x);
            queue.push_back(y);
        }
    }
    if !seen[a] {
        return Err(Error::NoCycle(a, b));
    }
    // Walk back from a to b, which lists the cycle as a, (path towards b)...
    let mut back = vec![a];
    let mut cur = a;
    while let Some(p) = parent[cur] {
        back.push(p);
        cur = p;
    }
    // back = [a, ..., b]; the cycle a -> b -> ... -> a is its reverse rotated.
    let mut cycle = vec![a];
    cycle.extend(back[1..].iter().rev());
    MinCycleRecord::from_cycle(net, &cycle)
}

/// All simple cycles, each once: it starts at its smallest vertex and its
/// second vertex is smaller than its last.
pub fn simple_cycles(net: &OwnedNetwork) -> Vec<Vec<usize>> {
    let n = net.n();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = Vec::new();
    for s in 0..n {
        path.push(s);
        on_path[s] = true;
        extend_cycles(net, s, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
        path.pop();
    }
    out
}

fn extend_cycles(net: &OwnedNetwork, s: usize, path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let last = *path.last().unwrap();
    for &y in net.neighbors(last) {
        if y == s && path.len() >= 3 && path[1] < last {
            out.push(path.clone());
        }
        if y <= s || on_path[y] {
            continue;
        }
        on_path[y] = true;
        path.push(y);
        extend_cycles(net, s, path, on_path, out);
        path.pop();
        on_path[y] = false;
    }
}

/// Every min cycle of the network, in [`simple_cycles`] order.
pub fn min_cycles(net: &OwnedNetwork) -> Vec<MinCycleRecord> {
    let dm = DistanceMatrix::new(net);
    simple_cycles(net)
        .into_iter()
        .filter(|c| min_check(&dm, c))
        .map(|c| MinCycleRecord::from_cycle_with(net, &dm, &c).expect("enumerated cycles are valid"))
        .collect()
}

/// First triangle `a < b < c` in lexicographic order.
pub fn find_triangle(net: &OwnedNetwork) -> Option<[usize; 3]> {
    let n = net.n();
    for a in 0..n {
        for &b in net.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in net.neighbors(b).iter().filter(|&&c| c > b) {
                if net.has_edge(a, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// First 4-cycle without chords, listed from its smallest vertex.
pub fn find_chordless_four_cycle(net: &OwnedNetwork) -> Option<[usize; 4]> {
    simple_cycles(net)
        .into_iter()
        .filter(|c| c.len() == 4)
        .find(|c| !net.has_edge(c[0], c[2]) && !net.has_edge(c[1], c[3]))
        .map(|c| [c[0], c[1], c[2], c[3]])
}

/// Whether some cycle of length four exists, chords allowed.
pub fn has_four_cycle(net: &OwnedNetwork) -> bool {
    let n = net.n();
    // Two vertices with two common neighbours.
    for a in 0..n {
        for b in a + 1..n {
            let common = net.neighbors(a).iter().filter(|&&x| net.has_edge(b, x)).count();
            if common >= 2 {
                return true;
            }
        }
    }
    false
}
