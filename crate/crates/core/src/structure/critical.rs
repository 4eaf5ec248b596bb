use serde::Serialize;

use crate::graph::{
    biconnected_components, component_of_edge, edge, shortest_path, BiconnectedComponent, DistanceMatrix,
    OwnedNetwork,
};

/// One critical pair `<v, u>` with a representative choice of `v1, v2, u'`.
///
/// When several choices qualify the record keeps the lexicographically
/// smallest `(v1, v2, u')`, preferring choices that make the pair strong.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalPairRecord {
    pub v: usize,
    pub u: usize,
    pub v1: usize,
    pub v2: usize,
    pub u_prime: usize,
    pub strong: bool,
    /// Number of `(v1, v2, u')` choices that satisfy the definition.
    pub choices: usize,
    /// Shortest `v`–`u` path starting with `(v, v1)`.
    pub path_v_u: Vec<usize>,
    /// Shortest `v`–`u'` path avoiding `(u, u')`.
    pub path_v_u_prime: Vec<usize>,
    /// Shortest `u`–`v2` path avoiding `(v, v2)`; present when strong.
    pub path_u_v2: Option<Vec<usize>>,
}

/// Result of testing one concrete choice against the definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairCheck {
    NotCritical,
    Critical,
    Strong,
}

/// Test the five critical-pair properties and the strong clause for one
/// choice of `v, v1, v2, u, u'`.
pub fn check_critical_pair(
    net: &OwnedNetwork,
    dm: &DistanceMatrix,
    components: &[BiconnectedComponent],
    (v, v1, v2): (usize, usize, usize),
    (u, u_prime): (usize, usize),
) -> PairCheck {
    let n = net.n();
    if [v, v1, v2, u, u_prime].iter().any(|&x| x >= n) || v1 == v2 || u == v || u_prime == v {
        return PairCheck::NotCritical;
    }
    if !net.buys(v, v1) || !net.buys(v, v2) || !net.buys(u, u_prime) {
        return PairCheck::NotCritical;
    }
    let Some(h) = component_of_edge(components, v, v1) else { return PairCheck::NotCritical };
    if component_of_edge(components, v, v2) != Some(h) || component_of_edge(components, u, u_prime) != Some(h) {
        return PairCheck::NotCritical;
    }
    let d = |a: usize, b: usize| dm.get(a, b).finite();
    let Some(dvu) = d(v, u) else { return PairCheck::NotCritical };
    if dvu < 2 || d(v1, u) != Some(dvu - 1) {
        return PairCheck::NotCritical;
    }
    if !has_last_step_avoiding(net, dm, v, u_prime, u) {
        return PairCheck::NotCritical;
    }
    if has_last_step_avoiding(net, dm, u, v2, v) {
        PairCheck::Strong
    } else {
        PairCheck::Critical
    }
}

/// Whether some shortest `from`–`to` path does not end with the edge `(banned, to)`.
fn has_last_step_avoiding(net: &OwnedNetwork, dm: &DistanceMatrix, from: usize, to: usize, banned: usize) -> bool {
    let Some(dt) = dm.get(from, to).finite() else { return false };
    if dt == 0 {
        return true;
    }
    net.neighbors(to).iter().any(|&w| w != banned && dm.get(from, w).finite() == Some(dt - 1))
}

/// Every critical pair, sorted by `(v, u)`.
pub fn critical_pairs(net: &OwnedNetwork) -> Vec<CriticalPairRecord> {
    critical_pairs_with(net, &DistanceMatrix::new(net), &biconnected_components(net))
}

pub fn critical_pairs_with(
    net: &OwnedNetwork,
    dm: &DistanceMatrix,
    components: &[BiconnectedComponent],
) -> Vec<CriticalPairRecord> {
    let mut out = Vec::new();
    for v in 0..net.n() {
        for u in 0..net.n() {
            if let Some(r) = pair_record(net, dm, components, v, u) {
                out.push(r);
            }
        }
    }
    out
}

/// The record for `<v, u>`, if they form a critical pair.
pub fn pair_record(
    net: &OwnedNetwork,
    dm: &DistanceMatrix,
    components: &[BiconnectedComponent],
    v: usize,
    u: usize,
) -> Option<CriticalPairRecord> {
    if u == v {
        return None;
    }
    let mut best: Option<((usize, usize, usize), bool)> = None;
    let mut choices = 0;
    for &v1 in net.strategy(v) {
        for &v2 in net.strategy(v) {
            for &up in net.strategy(u) {
                let check = check_critical_pair(net, dm, components, (v, v1, v2), (u, up));
                if check == PairCheck::NotCritical {
                    continue;
                }
                choices += 1;
                let strong = check == PairCheck::Strong;
                // Iteration is lexicographic, so the first hit of each kind is the smallest.
                match best {
                    None => best = Some(((v1, v2, up), strong)),
                    Some((_, false)) if strong => best = Some(((v1, v2, up), true)),
                    _ => {}
                }
            }
        }
    }
    let ((v1, v2, u_prime), strong) = best?;
    Some(build_record(net, (v, v1, v2), (u, u_prime), strong, choices))
}

/// A record for one concrete choice already known to satisfy the definition.
pub(crate) fn build_record(
    net: &OwnedNetwork,
    (v, v1, v2): (usize, usize, usize),
    (u, u_prime): (usize, usize),
    strong: bool,
    choices: usize,
) -> CriticalPairRecord {
    let mut path_v_u = vec![v];
    path_v_u.extend(shortest_path(net, v1, u, &[]).expect("u is reachable"));
    let path_v_u_prime =
        shortest_path(net, v, u_prime, &[edge(u, u_prime)]).expect("a shortest path avoids (u, u')");
    let path_u_v2 = strong.then(|| shortest_path(net, u, v2, &[edge(v, v2)]).expect("strong pair"));
    CriticalPairRecord { v, u, v1, v2, u_prime, strong, choices, path_v_u, path_v_u_prime, path_u_v2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_have_none() {
        let tree = OwnedNetwork::new(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert!(critical_pairs(&tree).is_empty());
    }

    #[test]
    fn directed_cycle_has_none() {
        let c5 = OwnedNetwork::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(critical_pairs(&c5).is_empty());
    }

    #[test]
    fn double_buyer_on_c5() {
        let net = OwnedNetwork::new(5, &[(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]).unwrap();
        let pairs = critical_pairs(&net);
        let r = pairs.iter().find(|r| r.v == 0 && r.u == 2).expect("<0, 2> is critical");
        assert!(r.strong);
        assert_eq!((r.v1, r.v2, r.u_prime), (1, 4, 3));
        assert_eq!(r.path_v_u, vec![0, 1, 2]);
        assert_eq!(r.path_v_u_prime, vec![0, 4, 3]);
        assert_eq!(r.path_u_v2, Some(vec![2, 3, 4]));
        let mirror = pairs.iter().find(|r| r.v == 0 && r.u == 3).expect("<0, 3> is critical");
        assert!(mirror.strong);
        let dm = DistanceMatrix::new(&net);
        let comps = biconnected_components(&net);
        // 4 buys nothing, so it cannot play u.
        assert_eq!(check_critical_pair(&net, &dm, &comps, (0, 1, 4), (4, 3)), PairCheck::NotCritical);
        assert!(pairs.windows(2).all(|w| (w[0].v, w[0].u) < (w[1].v, w[1].u)));
        for r in &pairs {
            assert_ne!(
                check_critical_pair(&net, &dm, &comps, (r.v, r.v1, r.v2), (r.u, r.u_prime)),
                PairCheck::NotCritical
            );
        }
    }
}
