use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Dist, DistanceMatrix, OwnedNetwork};

/// Vertices grouped by their strictly closest anchor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionSets {
    pub anchors: Vec<usize>,
    /// `sets[i]`: vertices strictly closer to `anchors[i]` than to every other anchor.
    pub sets: Vec<Vec<usize>>,
    /// Only for four anchors in cycle order: `ties[i]` holds the vertices
    /// equidistant to `anchors[i]` and `anchors[i-1]` and strictly closer to
    /// both than to the remaining two.
    pub ties: Option<Vec<Vec<usize>>>,
    /// Vertices in no set.
    pub unassigned: Vec<usize>,
}

impl PartitionSets {
    pub fn set_sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    pub fn tie_sizes(&self) -> Vec<usize> {
        self.ties.as_ref().map_or_else(Vec::new, |z| z.iter().map(Vec::len).collect())
    }
}

pub fn closest_partition(net: &OwnedNetwork, anchors: &[usize]) -> Result<PartitionSets> {
    closest_partition_with(net, &DistanceMatrix::new(net), anchors)
}

/// As [`closest_partition`], reusing precomputed distances.
pub fn closest_partition_with(net: &OwnedNetwork, dm: &DistanceMatrix, anchors: &[usize]) -> Result<PartitionSets> {
    let n = net.n();
    let mut seen = BTreeSet::new();
    for &a in anchors {
        if a >= n {
            return Err(Error::IndexOutOfRange { agent: a, n });
        }
        if !seen.insert(a) {
            return Err(Error::DuplicateAnchor(a));
        }
    }
    let k = anchors.len();
    let mut sets = vec![Vec::new(); k];
    let mut ties = (k == 4).then(|| vec![Vec::new(); 4]);
    let mut unassigned = Vec::new();
    for x in 0..n {
        let d: Vec<Dist> = anchors.iter().map(|&a| dm.get(a, x)).collect();
        let best = d.iter().copied().min();
        let closest: Vec<usize> = (0..k).filter(|&i| Some(d[i]) == best && d[i].is_finite()).collect();
        match closest.as_slice() {
            [i] => sets[*i].push(x),
            [i, j] if ties.is_some() => {
                // Adjacent in cycle order: (0,1), (1,2), (2,3) or (0,3).
                let slot = match (*i, *j) {
                    (0, 3) => Some(0),
                    (a, b) if b == a + 1 => Some(b),
                    _ => None,
                };
                match slot {
                    Some(s) => ties.as_mut().unwrap()[s].push(x),
                    None => unassigned.push(x),
                }
            }
            _ => unassigned.push(x),
        }
    }
    Ok(PartitionSets { anchors: anchors.to_vec(), sets, ties, unassigned })
}
