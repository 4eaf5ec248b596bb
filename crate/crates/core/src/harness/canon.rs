//! Canonical forms of small graphs and owned networks.
//!
//! Colour refinement splits the vertices into invariant cells; the canonical
//! labelling is then the lexicographically smallest adjacency encoding over
//! all orderings that respect the cells. Interchangeable twins are tried
//! once per position, which keeps stars and cliques cheap.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::OwnedNetwork;

/// Largest vertex count the encodings support.
pub const MAX_CANON_N: usize = 16;

/// Isomorphism-invariant key: two inputs get equal keys iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: usize,
    rows: Vec<u64>,
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{r:x}")?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An undirected simple graph on at most [`MAX_CANON_N`] vertices, as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    adj: Vec<u32>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_CANON_N, "at most {MAX_CANON_N} vertices");
        SimpleGraph { adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b);
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n).flat_map(|a| (a + 1..n).filter(move |&b| self.has_edge(a, b)).map(move |b| (a, b))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            for v in 0..n {
                if frontier >> v & 1 == 1 {
                    next |= self.adj[v];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == n
    }

    /// A copy with one more vertex adjacent to the vertices in `mask`.
    pub fn with_vertex(&self, mask: u32) -> Self {
        let n = self.n();
        let mut g = self.clone();
        g.adj.push(0);
        for v in 0..n {
            if mask >> v & 1 == 1 {
                g.add_edge(v, n);
            }
        }
        g
    }

    /// Vertex `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut g = Self::empty(self.n());
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]);
        }
        g
    }

    pub fn from_network(net: &OwnedNetwork) -> Self {
        Self::from_edges(net.n(), &net.edges())
    }
}

/// Canonical key of an undirected graph and the canonically relabelled copy.
pub fn canonical_graph(g: &SimpleGraph) -> (CanonicalKey, SimpleGraph) {
    let (key, order) = canonical_order(g.n(), |a, b| u8::from(g.has_edge(a, b)));
    let perm = inverse(&order);
    (key, g.relabel(&perm))
}

/// Canonical key of an owned network (ownership included) and the
/// canonically relabelled copy.
pub fn canonical_network(net: &OwnedNetwork) -> (CanonicalKey, OwnedNetwork) {
    assert!(net.n() <= MAX_CANON_N, "at most {MAX_CANON_N} agents");
    let (key, order) = canonical_order(net.n(), |a, b| u8::from(net.buys(a, b)) | u8::from(net.buys(b, a)) << 1);
    let perm = inverse(&order);
    (key, net.relabel(&perm))
}

pub fn network_key(net: &OwnedNetwork) -> CanonicalKey {
    canonical_network(net).0
}

/// `order[pos] = vertex` becomes `perm[vertex] = pos`.
fn inverse(order: &[usize]) -> Vec<usize> {
    let mut perm = vec![0; order.len()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    perm
}

/// Invariant colouring by iterated neighbourhood signatures.
fn refine(n: usize, code: &impl Fn(usize, usize) -> u8) -> Vec<usize> {
    let mut colour = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u8)> =
                    (0..n).filter(|&w| w != v && code(v, w) != 0).map(|w| (colour[w], code(v, w))).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colour = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        if distinct.len() == classes {
            return colour;
        }
        classes = distinct.len();
    }
}

struct Search<'a, F: Fn(usize, usize) -> u8> {
    n: usize,
    code: &'a F,
    /// Colour required at each position.
    slot_colour: Vec<usize>,
    colour: Vec<usize>,
    /// `twin[a][b]`: swapping `a` and `b` preserves every code.
    twin: Vec<Vec<bool>>,
    order: Vec<usize>,
    used: Vec<bool>,
    rows: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl<F: Fn(usize, usize) -> u8> Search<'_, F> {
    fn row(&self, v: usize) -> u64 {
        self.order.iter().enumerate().fold(0u64, |acc, (q, &w)| acc | (u64::from((self.code)(v, w)) << (2 * q)))
    }

    fn go(&mut self, pos: usize) {
        if pos == self.n {
            if self.best.as_ref().is_none_or(|(b, _)| self.rows < *b) {
                self.best = Some((self.rows.clone(), self.order.clone()));
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..self.n {
            if self.used[v] || self.colour[v] != self.slot_colour[pos] {
                continue;
            }
            // A twin already tried here leads to an identical subtree.
            if tried.iter().any(|&t| self.twin[t][v]) {
                continue;
            }
            tried.push(v);
            let row = self.row(v);
            if let Some((best_rows, _)) = &self.best {
                let prefix = self.rows.iter().chain(std::iter::once(&row));
                if prefix.cmp(best_rows[..=pos].iter()) == Ordering::Greater {
                    continue;
                }
            }
            self.used[v] = true;
            self.order.push(v);
            self.rows.push(row);
            self.go(pos + 1);
            self.rows.pop();
            self.order.pop();
            self.used[v] = false;
        }
    }
}

fn canonical_order(n: usize, code: impl Fn(usize, usize) -> u8) -> (CanonicalKey, Vec<usize>) {
    let colour = refine(n, &code);
    let mut slot_colour = colour.clone();
    slot_colour.sort_unstable();
    let twins = |a: usize, b: usize| {
        colour[a] == colour[b]
            && code(a, b) == code(b, a)
            && (0..n).all(|w| w == a || w == b || code(a, w) == code(b, w))
    };
    let twin: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a != b && twins(a, b)).collect()).collect();
    let mut s = Search {
        n,
        code: &code,
        slot_colour,
        colour,
        twin,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        rows: Vec::with_capacity(n),
        best: None,
    };
    s.go(0);
    let (rows, order) = s.best.expect("at least one ordering");
    (CanonicalKey { n, rows }, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_copies_share_a_key() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)]);
        let (k, c) = canonical_graph(&g);
        let h = g.relabel(&[3, 0, 4, 1, 2]);
        let (k2, c2) = canonical_graph(&h);
        assert_eq!(k, k2);
        assert_eq!(c, c2);
        assert_eq!(canonical_graph(&c).0, k);
    }

    #[test]
    fn non_isomorphic_differ() {
        let path = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let star = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_ne!(canonical_graph(&path).0, canonical_graph(&star).0);
    }

    #[test]
    fn ownership_matters() {
        let a = OwnedNetwork::new(3, &[(0, 1), (1, 2)]).unwrap();
        let b = OwnedNetwork::new(3, &[(1, 0), (1, 2)]).unwrap();
        let c = OwnedNetwork::new(3, &[(2, 1), (1, 0)]).unwrap();
        assert_ne!(network_key(&a), network_key(&b));
        assert_eq!(network_key(&a), network_key(&c));
    }

    #[test]
    fn brute_force_agreement() {
        // Every permutation of a 6-vertex network yields the same canonical copy.
        let net = OwnedNetwork::new(6, &[(0, 1), (1, 2), (2, 0), (3, 2), (3, 4), (5, 4), (5, 0)]).unwrap();
        let (key, rep) = canonical_network(&net);
        let mut perm: Vec<usize> = (0..6).collect();
        let mut count = 0;
        permute(&mut perm, 0, &mut |p| {
            let (k, r) = canonical_network(&net.relabel(p));
            assert_eq!(k, key);
            assert_eq!(r, rep);
            count += 1;
        });
        assert_eq!(count, 720);
    }

    fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
        if i == p.len() {
            f(p);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            permute(p, i + 1, f);
            p.swap(i, j);
        }
    }

    #[test]
    fn cliques_and_stars_are_fast() {
        let mut k = SimpleGraph::empty(12);
        for a in 0..12 {
            for b in a + 1..12 {
                k.add_edge(a, b);
            }
        }
        assert_eq!(canonical_graph(&k).1, k);
        let star = OwnedNetwork::new(12, &(1..12).map(|i| (0, i)).collect::<Vec<_>>()).unwrap();
        let (_, rep) = canonical_network(&star);
        assert_eq!(rep.edge_count(), 11);
    }
}
