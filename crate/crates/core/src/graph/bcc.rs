//! Biconnected components via Tarjan's edge-stack DFS.
//!
//! One-edge pieces (bridges) are dropped: only components with at least three
//! vertices are reported.

use serde::Serialize;

use super::network::{edge, Edge, OwnedNetwork};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BiconnectedComponent {
    /// Sorted member vertices.
    pub vertices: Vec<usize>,
    /// Sorted member edges, each `(low, high)`.
    pub edges: Vec<Edge>,
}

impl BiconnectedComponent {
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&edge(a, b)).is_ok()
    }

    /// A biconnected component is a cycle exactly when it has as many edges as vertices.
    pub fn is_cycle(&self) -> bool {
        self.edges.len() == self.vertices.len()
    }
}

struct Tarjan<'a> {
    net: &'a OwnedNetwork,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<Edge>,
    out: Vec<BiconnectedComponent>,
}

const UNSEEN: usize = usize::MAX;

impl Tarjan<'_> {
    fn visit(&mut self, u: usize, parent: usize) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        for &v in self.net.neighbors(u) {
            if self.disc[v] == UNSEEN {
                self.stack.push((u, v));
                self.visit(v, u);
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    self.pop_component((u, v));
                }
            } else if v != parent && self.disc[v] < self.disc[u] {
                self.stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
    }

    fn pop_component(&mut self, until: Edge) {
        let mut edges = Vec::new();
        while let Some(e) = self.stack.pop() {
            edges.push(edge(e.0, e.1));
            if e == until {
                break;
            }
        }
        if edges.len() < 2 {
            return;
        }
        edges.sort_unstable();
        let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        self.out.push(BiconnectedComponent { vertices, edges });
    }
}

/// Non-trivial biconnected components, sorted by their smallest vertex then edges.
pub fn biconnected_components(net: &OwnedNetwork) -> Vec<BiconnectedComponent> {
    let n = net.n();
    let mut t = Tarjan {
        net,
        disc: vec![UNSEEN; n],
        low: vec![UNSEEN; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for s in 0..n {
        if t.disc[s] == UNSEEN {
            t.visit(s, UNSEEN);
        }
    }
    let mut out = t.out;
    out.sort_by(|a, b| (&a.vertices, &a.edges).cmp(&(&b.vertices, &b.edges)));
    out
}

/// Index of the component containing edge `(a, b)`, or `None` for bridges.
pub fn component_of_edge(components: &[BiconnectedComponent], a: usize, b: usize) -> Option<usize> {
    components.iter().position(|c| c.contains_edge(a, b))
}
