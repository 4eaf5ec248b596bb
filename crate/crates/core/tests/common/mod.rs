//! Independent reference implementations: Floyd-Warshall distances and
//! brute-force costs and deviations, written without the library's kernels.

#![allow(dead_code, clippy::needless_range_loop)]

use ncg_core::graph::OwnedNetwork;
use num_rational::Ratio;

pub type Q = Ratio<i128>;

pub fn q(s: &str) -> Q {
    match s.split_once('/') {
        Some((a, b)) => Q::new(a.parse().unwrap(), b.parse().unwrap()),
        None => Q::from_integer(s.parse().unwrap()),
    }
}

/// Adjacency bitmasks of the undirected graph bought by `strategies`.
pub fn adjacency(n: usize, strategies: &[u32]) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for (u, &s) in strategies.iter().enumerate() {
        for v in 0..n {
            if s >> v & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
    }
    adj
}

pub fn masks(net: &OwnedNetwork) -> Vec<u32> {
    (0..net.n()).map(|u| net.strategy(u).iter().fold(0u32, |m, &v| m | 1 << v)).collect()
}

pub fn floyd(adj: &[u32]) -> Vec<Vec<Option<u64>>> {
    let n = adj.len();
    let mut d = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Some(0);
        for j in 0..n {
            if adj[i] >> j & 1 == 1 {
                d[i][j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Sum of distances from `u`, `None` when some agent is unreachable.
pub fn distcost(adj: &[u32], u: usize) -> Option<u64> {
    floyd(adj)[u].iter().copied().sum()
}

/// `alpha |S_u| + distcost(u)`, `None` for infinite.
pub fn cost(n: usize, strategies: &[u32], alpha: Q, u: usize) -> Option<Q> {
    let d = distcost(&adjacency(n, strategies), u)?;
    Some(alpha * Q::from_integer(strategies[u].count_ones() as i128) + Q::from_integer(d as i128))
}

pub fn social(n: usize, strategies: &[u32], alpha: Q) -> Option<Q> {
    (0..n).map(|u| cost(n, strategies, alpha, u)).sum()
}

fn less(a: Option<Q>, b: Option<Q>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    }
}

/// Cheapest cost `u` can reach by any strategy.
pub fn best_cost(n: usize, strategies: &[u32], alpha: Q, u: usize) -> Option<Q> {
    let mut s = strategies.to_vec();
    let mut best = cost(n, strategies, alpha, u);
    for m in 0..1u32 << n {
        if m >> u & 1 == 1 {
            continue;
        }
        s[u] = m;
        let c = cost(n, &s, alpha, u);
        if less(c, best) {
            best = c;
        }
    }
    best
}

/// No agent has any strictly improving strategy.
pub fn stable(n: usize, strategies: &[u32], alpha: Q) -> bool {
    (0..n).all(|u| best_cost(n, strategies, alpha, u) == cost(n, strategies, alpha, u))
}

/// Every profile on `n` agents, as strategy masks.
pub fn all_profiles(n: usize) -> Vec<Vec<u32>> {
    let per = 1usize << (n - 1);
    let mut out = Vec::new();
    for code in 0..per.pow(n as u32) {
        let mut c = code;
        let s = (0..n)
            .map(|u| {
                let low = (c % per) as u32;
                c /= per;
                // Spread the n-1 bits over the targets other than u.
                let below = low & ((1 << u) - 1);
                below | (low >> u) << (u + 1)
            })
            .collect();
        out.push(s);
    }
    out
}

pub fn network(n: usize, strategies: &[u32]) -> OwnedNetwork {
    let mut bought = Vec::new();
    for (u, &s) in strategies.iter().enumerate() {
        for v in 0..n {
            if s >> v & 1 == 1 {
                bought.push((u, v));
            }
        }
    }
    OwnedNetwork::new(n, &bought).unwrap()
}

/// Every permutation of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest purchase list over all relabellings.
pub fn brute_canonical(net: &OwnedNetwork) -> Vec<(usize, usize)> {
    permutations(net.n()).iter().map(|p| net.relabel(p).bought_edges()).min().unwrap()
}

/// Every simple cycle as a vertex list, each found once.
pub fn simple_cycles(adj: &[u32]) -> Vec<Vec<usize>> {
    fn extend(adj: &[u32], start: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        for w in 0..adj.len() {
            if adj[last] >> w & 1 == 0 {
                continue;
            }
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if w > start && !path.contains(&w) {
                path.push(w);
                extend(adj, start, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..adj.len() {
        extend(adj, s, &mut vec![s], &mut out);
    }
    out
}

/// Graph distances between cycle members equal their distances along the cycle.
pub fn is_min(adj: &[u32], cycle: &[usize]) -> bool {
    let d = floyd(adj);
    let k = cycle.len();
    (0..k).all(|i| {
        (0..k).all(|j| {
            let along = (i as i64 - j as i64).unsigned_abs() as usize;
            d[cycle[i]][cycle[j]] == Some(along.min(k - along) as u64)
        })
    })
}

/// Every connected graph on `n` labelled vertices, as adjacency masks.
pub fn labelled_connected(n: usize) -> Vec<Vec<u32>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for m in 0u64..1 << pairs.len() {
        let mut adj = vec![0u32; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if m >> i & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        if floyd(&adj)[0].iter().all(Option::is_some) {
            out.push(adj);
        }
    }
    out
}

/// One owner per edge, the lower endpoint.
pub fn low_owner(adj: &[u32]) -> OwnedNetwork {
    let n = adj.len();
    let mut bought = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if adj[a] >> b & 1 == 1 {
                bought.push((a, b));
            }
        }
    }
    OwnedNetwork::new(n, &bought).unwrap()
}
