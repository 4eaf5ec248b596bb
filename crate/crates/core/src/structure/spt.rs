use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bfs, Dist, OwnedNetwork};

/// A breadth-first tree: every root-to-vertex tree path is a shortest path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortestPathTree {
    pub root: usize,
    /// `None` for the root and for vertices the root cannot reach.
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<Dist>,
}

impl ShortestPathTree {
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.parent[x] == Some(v)).collect()
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        self.parent[a] == Some(b) || self.parent[b] == Some(a)
    }

    /// Whether `anc` lies on the tree path from the root to `x` (inclusive).
    pub fn is_descendant(&self, x: usize, anc: usize) -> bool {
        let mut cur = Some(x);
        while let Some(c) = cur {
            if c == anc {
                return true;
            }
            cur = self.parent[c];
        }
        false
    }

    /// `v` together with everything below it.
    pub fn descendants(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.is_descendant(x, v)).collect()
    }

    /// Tree path `[root, ..., x]`; empty when `x` is unreachable.
    pub fn path_from_root(&self, x: usize) -> Vec<usize> {
        if !self.depth[x].is_finite() {
            return Vec::new();
        }
        let mut path = vec![x];
        let mut cur = x;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}

/// A shortest-path tree from `root` where each vertex's parent is picked by
/// `choose` among its eligible parents (neighbours one level closer, ascending).
pub fn spt_with_rule(
    net: &OwnedNetwork,
    root: usize,
    mut choose: impl FnMut(usize, &[usize]) -> usize,
) -> ShortestPathTree {
    let depth = bfs(net, root);
    let parent = (0..net.n())
        .map(|x| {
            let Dist::Finite(dx) = depth[x] else { return None };
            if dx == 0 {
                return None;
            }
            let eligible: Vec<usize> =
                net.neighbors(x).iter().copied().filter(|&y| depth[y] == Dist::Finite(dx - 1)).collect();
            let p = choose(x, &eligible);
            debug_assert!(eligible.contains(&p));
            Some(p)
        })
        .collect();
    ShortestPathTree { root, parent, depth }
}

/// Smallest-index eligible parent everywhere.
pub fn canonical_spt(net: &OwnedNetwork, root: usize) -> ShortestPathTree {
    spt_with_rule(net, root, |_, eligible| eligible[0])
}

/// A shortest-path tree from `root` that hangs every vertex with a shortest
/// path through `(root, v1)` below `v1`, then every remaining vertex with a
/// shortest path through `(root, v2)` below `v2`; other parents are the
/// smallest eligible index.
pub fn priority_spt(net: &OwnedNetwork, root: usize, e1: (usize, usize), e2: (usize, usize)) -> Result<ShortestPathTree> {
    let other_end = |e: (usize, usize)| -> Result<usize> {
        let v = match e {
            (a, b) if a == root => b,
            (a, b) if b == root => a,
            (a, b) => return Err(Error::EdgeNotIncident(a, b)),
        };
        if v >= net.n() || !net.has_edge(root, v) {
            return Err(Error::EdgeNotIncident(e.0, e.1));
        }
        Ok(v)
    };
    let v1 = other_end(e1)?;
    let v2 = other_end(e2)?;
    if v1 == v2 {
        return Err(Error::EdgeNotIncident(e2.0, e2.1));
    }
    let d_root = bfs(net, root);
    let d1 = bfs(net, v1);
    let d2 = bfs(net, v2);
    let one_closer = |d: &[Dist], x: usize| match (d[x], d_root[x]) {
        (Dist::Finite(a), Dist::Finite(b)) => a + 1 == b,
        _ => false,
    };
    // 0: via v1, 1: via v2, 2: neither.
    let class: Vec<u8> = (0..net.n())
        .map(|x| {
            if one_closer(&d1, x) {
                0
            } else if one_closer(&d2, x) {
                1
            } else {
                2
            }
        })
        .collect();
    Ok(spt_with_rule(net, root, |x, eligible| {
        eligible
            .iter()
            .copied()
            .find(|&y| y != root && class[y] == class[x])
            .unwrap_or_else(|| if eligible.contains(&root) { root } else { eligible[0] })
    }))
}
