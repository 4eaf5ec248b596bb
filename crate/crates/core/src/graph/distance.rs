use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

use super::network::{edge, Edge, OwnedNetwork};

/// Hop distance, or `Infinite` between different components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dist {
    Finite(u64),
    Infinite,
}

impl Dist {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dist::Finite(v) => Some(v),
            Dist::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }

    /// Panics on `Infinite`; for call sites that already established connectivity.
    pub fn unwrap(self) -> u64 {
        self.finite().expect("distance is infinite")
    }
}

impl Add for Dist {
    type Output = Dist;
    fn add(self, rhs: Dist) -> Dist {
        match (self, rhs) {
            (Dist::Finite(a), Dist::Finite(b)) => Dist::Finite(a + b),
            _ => Dist::Infinite,
        }
    }
}

impl std::iter::Sum for Dist {
    fn sum<I: Iterator<Item = Dist>>(iter: I) -> Dist {
        iter.fold(Dist::Finite(0), |a, b| a + b)
    }
}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dist::Finite(a), Dist::Finite(b)) => a.cmp(b),
            (Dist::Finite(_), Dist::Infinite) => Ordering::Less,
            (Dist::Infinite, Dist::Finite(_)) => Ordering::Greater,
            (Dist::Infinite, Dist::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(v) => write!(f, "{v}"),
            Dist::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dist::Finite(v) => s.serialize_u64(*v),
            Dist::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Breadth-first distances from `src`, ignoring the edges in `avoid`.
pub fn bfs_avoiding(net: &OwnedNetwork, src: usize, avoid: &[Edge]) -> Vec<Dist> {
    bfs_tree(net, src, avoid)
        .0
        .into_iter()
        .map(|d| d.map_or(Dist::Infinite, |v| Dist::Finite(v as u64)))
        .collect()
}

pub fn bfs(net: &OwnedNetwork, src: usize) -> Vec<Dist> {
    bfs_avoiding(net, src, &[])
}

/// BFS levels and first-discovery parents (neighbours scanned in ascending order).
fn bfs_tree(net: &OwnedNetwork, src: usize, avoid: &[Edge]) -> (Vec<Option<u32>>, Vec<Option<usize>>) {
    let n = net.n();
    let mut dist = vec![None; n];
    let mut parent = vec![None; n];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].unwrap();
        for &y in net.neighbors(x) {
            if dist[y].is_some() || avoid.contains(&edge(x, y)) {
                continue;
            }
            dist[y] = Some(dx + 1);
            parent[y] = Some(x);
            queue.push_back(y);
        }
    }
    (dist, parent)
}

/// A shortest `s`–`t` path in the graph minus `avoid`, as a vertex list.
pub fn shortest_path(net: &OwnedNetwork, s: usize, t: usize, avoid: &[Edge]) -> Option<Vec<usize>> {
    let (dist, parent) = bfs_tree(net, s, avoid);
    dist[t]?;
    let mut path = vec![t];
    let mut cur = t;
    while let Some(p) = parent[cur] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    Some(path)
}

/// All-pairs hop distances of the induced graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Dist>,
}

impl DistanceMatrix {
    pub fn new(net: &OwnedNetwork) -> Self {
        let n = net.n();
        let mut d = Vec::with_capacity(n * n);
        for s in 0..n {
            d.extend(bfs(net, s));
        }
        DistanceMatrix { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> Dist {
        self.d[a * self.n + b]
    }

    /// Finite distance; panics if `a` and `b` are disconnected.
    pub fn hop(&self, a: usize, b: usize) -> u64 {
        self.get(a, b).unwrap()
    }

    pub fn row(&self, a: usize) -> &[Dist] {
        &self.d[a * self.n..(a + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        self.d.iter().all(|d| d.is_finite())
    }

    /// Sum of distances from `u` to everyone.
    pub fn distcost(&self, u: usize) -> Dist {
        self.row(u).iter().copied().sum()
    }

    /// Sum of distances from `x` to the members of `set`.
    pub fn sum_to_set(&self, x: usize, set: impl IntoIterator<Item = usize>) -> Dist {
        set.into_iter().map(|y| self.get(x, y)).sum()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Dist]> {
        self.d.chunks(self.n.max(1))
    }
}

pub fn all_pairs_distances(net: &OwnedNetwork) -> DistanceMatrix {
    DistanceMatrix::new(net)
}

/// Distance cost of agent `u`: the sum of its distances, infinite if the
/// network is disconnected.
pub fn distcost(net: &OwnedNetwork, u: usize) -> Dist {
    bfs(net, u).into_iter().sum()
}

/// `sum_{x' in set} d(x, x')`.
pub fn sum_distance_to_set(net: &OwnedNetwork, x: usize, set: &[usize]) -> Dist {
    let row = bfs(net, x);
    set.iter().map(|&y| row[y]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> OwnedNetwork {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        OwnedNetwork::new(n, &edges).unwrap()
    }

    fn star4() -> OwnedNetwork {
        OwnedNetwork::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn path_and_disconnected_distances() {
        let path = OwnedNetwork::new(3, &[(0, 1), (1, 2)]).unwrap();
        let dm = DistanceMatrix::new(&path);
        assert_eq!(dm.get(0, 2), Dist::Finite(2));
        let pair = OwnedNetwork::empty(2);
        assert_eq!(DistanceMatrix::new(&pair).get(0, 1), Dist::Infinite);
    }

    #[test]
    fn five_cycle_antipodes_at_two() {
        let dm = DistanceMatrix::new(&cycle(5));
        for u in 0..5 {
            assert_eq!(dm.get(u, (u + 2) % 5), Dist::Finite(2));
            assert_eq!(dm.get(u, (u + 3) % 5), Dist::Finite(2));
        }
    }

    #[test]
    fn distcost_examples() {
        let path = OwnedNetwork::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(distcost(&path, 1), Dist::Finite(2));
        assert_eq!(distcost(&star4(), 0), Dist::Finite(3));
        assert_eq!(distcost(&star4(), 2), Dist::Finite(5));
        assert_eq!(distcost(&OwnedNetwork::empty(2), 0), Dist::Infinite);
    }

    #[test]
    fn set_sums() {
        let path = OwnedNetwork::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(sum_distance_to_set(&path, 0, &[]), Dist::Finite(0));
        assert_eq!(sum_distance_to_set(&path, 0, &[1, 2]), Dist::Finite(3));
        assert_eq!(sum_distance_to_set(&star4(), 1, &[2, 3]), Dist::Finite(4));
    }

    #[test]
    fn avoiding_an_edge() {
        let c = cycle(5);
        let d = bfs_avoiding(&c, 0, &[(0, 1)]);
        assert_eq!(d[1], Dist::Finite(4));
        let p = shortest_path(&c, 0, 1, &[(0, 1)]).unwrap();
        assert_eq!(p, vec![0, 4, 3, 2, 1]);
    }
}
