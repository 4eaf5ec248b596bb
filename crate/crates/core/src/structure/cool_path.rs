//! A critical pair `<v, u>` together with a short detour `P` from `v` to `v2`
//! that uses neither of `v`'s two purchases, built from the min cycles
//! through those purchases and a priority shortest-path tree rooted at `v`.

use serde::Serialize;

use super::critical::{build_record, check_critical_pair, pair_record, CriticalPairRecord, PairCheck};
use super::cycles::{directed_orientation, min_cycle_through_edge, MinCycleRecord};
use super::spt::{priority_spt, ShortestPathTree};
use crate::error::{Error, Result};
use crate::graph::{biconnected_components, edge, BiconnectedComponent, DistanceMatrix, OwnedNetwork};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoolPathWitness {
    pub pair: CriticalPairRecord,
    /// Vertex list from `v` to `v2`.
    pub path: Vec<usize>,
    /// Min cycle through `(v, v1)`, listed in its owner direction from `v`.
    pub cycle_1: MinCycleRecord,
    /// Min cycle through `(v, v2)`, listed in its owner direction from `v`.
    pub cycle_2: MinCycleRecord,
    /// The farthest descendants `u_1, u_2` and their cycle successors.
    pub farthest: [(usize, usize); 2],
    pub tree: ShortestPathTree,
}

impl CoolPathWitness {
    /// Edge count of `path`.
    pub fn path_length(&self) -> usize {
        self.path.len() - 1
    }
}

/// Run the construction on every vertex that buys two edges of one
/// biconnected component, in index order, and return the first success.
///
/// `Error::NotFound` names the failed step of the first attempt when every
/// attempt fails, or says why no attempt could start.
pub fn cool_path_witness(net: &OwnedNetwork) -> Result<CoolPathWitness> {
    let components = biconnected_components(net);
    if components.is_empty() {
        return Err(Error::NotFound("no biconnected component".into()));
    }
    let dm = DistanceMatrix::new(net);
    let mut first_failure: Option<String> = None;
    for h in &components {
        for &v in &h.vertices {
            let inside: Vec<usize> = net.strategy(v).iter().copied().filter(|&x| h.contains_edge(v, x)).collect();
            for (i, &a) in inside.iter().enumerate() {
                for &b in &inside[i + 1..] {
                    match attempt(net, &dm, &components, h, v, a, b) {
                        Ok(w) => return Ok(w),
                        Err(step) => {
                            first_failure.get_or_insert(format!("v = {v}, v1 = {a}, v2 = {b}: {step}"));
                        }
                    }
                }
            }
        }
    }
    Err(Error::NotFound(
        first_failure.unwrap_or_else(|| "no vertex buys two edges of one biconnected component".into()),
    ))
}

fn attempt(
    net: &OwnedNetwork,
    dm: &DistanceMatrix,
    components: &[BiconnectedComponent],
    h: &BiconnectedComponent,
    v: usize,
    v1: usize,
    v2: usize,
) -> std::result::Result<CoolPathWitness, String> {
    let oriented = |vi: usize| -> std::result::Result<MinCycleRecord, String> {
        let c = min_cycle_through_edge(net, h, (v, vi)).map_err(|e| format!("min cycle through ({v}, {vi}): {e}"))?;
        let order = directed_orientation(net, &c.vertices)
            .ok_or_else(|| format!("min cycle through ({v}, {vi}) is not directed"))?;
        // v buys (v, vi), so the owner direction from v starts with vi.
        debug_assert_eq!(order[1], vi);
        MinCycleRecord::from_cycle_with(net, dm, &order).map_err(|e| e.to_string())
    };
    let mut c1 = oriented(v1)?;
    let mut c2 = oriented(v2)?;
    if c1.contains_edge(v, v2) || c2.contains_edge(v, v1) {
        return Err("a min cycle contains both purchases of v".into());
    }
    let tree = priority_spt(net, v, (v, v1), (v, v2)).map_err(|e| e.to_string())?;
    let farthest = |c: &MinCycleRecord, vi: usize| -> std::result::Result<(usize, usize), String> {
        let k = c.length;
        let pos = (1..k)
            .filter(|&p| tree.is_descendant(c.vertices[p], vi))
            .max()
            .expect("v_i is its own descendant");
        let (ui, succ) = (c.vertices[pos], c.vertices[(pos + 1) % k]);
        if succ == v {
            return Err(format!("every vertex of the cycle through ({v}, {vi}) descends from {vi}"));
        }
        Ok((ui, succ))
    };
    let mut f1 = farthest(&c1, v1)?;
    let mut f2 = farthest(&c2, v2)?;
    let (mut v1, mut v2) = (v1, v2);
    if dm.hop(v, f2.0) > dm.hop(v, f1.0) {
        std::mem::swap(&mut c1, &mut c2);
        std::mem::swap(&mut f1, &mut f2);
        std::mem::swap(&mut v1, &mut v2);
    }
    let (u, u_prime) = f1;
    let strong = match check_critical_pair(net, dm, components, (v, v1, v2), (u, u_prime)) {
        PairCheck::NotCritical => return Err(format!("<{v}, {u}> fails the critical-pair definition")),
        check => check == PairCheck::Strong,
    };
    // C2 = v -> v2 -> ... -> last -> v, so P walks v -> last -> ... -> v2.
    let mut path = vec![v];
    path.extend(c2.vertices[1..].iter().rev());
    let uses = |a: usize, b: usize| path.windows(2).any(|w| edge(w[0], w[1]) == edge(a, b));
    if uses(v, v1) || uses(v, v2) {
        return Err("path uses a purchase of v".into());
    }
    let len = path.len() as u64 - 1;
    if len > 2 * dm.hop(u, v) {
        return Err(format!("path of length {len} exceeds twice d(u, v) = {}", dm.hop(u, v)));
    }
    let choices = pair_record(net, dm, components, v, u).map_or(1, |r| r.choices);
    let pair = build_record(net, (v, v1, v2), (u, u_prime), strong, choices);
    Ok(CoolPathWitness { pair, path, cycle_1: c1, cycle_2: c2, farthest: [f1, f2], tree })
}
