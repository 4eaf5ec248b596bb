use std::collections::BTreeMap;

use serde::Serialize;

use super::network::OwnedNetwork;
use crate::error::{Error, Result};

/// Centroids of a tree together with the component sizes left by removing each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentroidReport {
    pub n: usize,
    /// One or two vertices, ascending.
    pub centroids: Vec<usize>,
    /// For each centroid: `(neighbour, size of the component of T - c containing it)`.
    pub subtree_sizes: BTreeMap<usize, Vec<(usize, usize)>>,
}

/// A tree hung from a root: parents, children, depths and subtree sizes.
#[derive(Debug, Clone)]
pub struct RootedTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub depth: Vec<usize>,
    pub subtree_size: Vec<usize>,
    /// Vertices in BFS order from the root.
    pub order: Vec<usize>,
}

impl RootedTree {
    pub fn new(tree: &OwnedNetwork, root: usize) -> Result<Self> {
        if !tree.is_tree() {
            return Err(Error::NotATree);
        }
        let n = tree.n();
        if root >= n {
            return Err(Error::IndexOutOfRange { agent: root, n });
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut order = vec![root];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &y in tree.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    children[x].push(y);
                    depth[y] = depth[x] + 1;
                    order.push(y);
                }
            }
        }
        let mut subtree_size = vec![1; n];
        for &x in order.iter().rev() {
            if let Some(p) = parent[x] {
                subtree_size[p] += subtree_size[x];
            }
        }
        Ok(RootedTree { root, parent, children, depth, subtree_size, order })
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// Vertices of the subtree rooted at `v`, `v` first.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            out.extend(self.children[x].iter().copied());
        }
        out
    }

    /// Path from the root down to `v`, inclusive.
    pub fn path_from_root(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }
}

/// Vertices whose removal leaves only components of at most `n/2` vertices.
pub fn centroids(tree: &OwnedNetwork) -> Result<CentroidReport> {
    let rooted = RootedTree::new(tree, 0)?;
    let n = tree.n();
    let mut report = CentroidReport { n, centroids: Vec::new(), subtree_sizes: BTreeMap::new() };
    for v in 0..n {
        let sizes: Vec<(usize, usize)> = tree
            .neighbors(v)
            .iter()
            .map(|&w| {
                let size = if rooted.parent[v] == Some(w) {
                    n - rooted.subtree_size[v]
                } else {
                    rooted.subtree_size[w]
                };
                (w, size)
            })
            .collect();
        if sizes.iter().all(|&(_, s)| 2 * s <= n) {
            report.centroids.push(v);
            report.subtree_sizes.insert(v, sizes);
        }
    }
    Ok(report)
}
