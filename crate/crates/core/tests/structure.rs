//! Biconnected components, min cycles, centroids, critical pairs and detour
//! witnesses checked against brute force over simple cycles and
//! Floyd-Warshall distances.

mod common;

use std::collections::BTreeSet;

use common::{adjacency, floyd, is_min, labelled_connected, low_owner, masks, simple_cycles};
use ncg_core::graph::{biconnected_components, centroids, OwnedNetwork};
use ncg_core::harness::trees;
use ncg_core::structure::{cool_path_witness, critical_pairs, is_min_cycle, min_cycle_through_edge, min_cycles};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type E = (usize, usize);

fn e(a: usize, b: usize) -> E {
    (a.min(b), a.max(b))
}

fn cycle_edges(c: &[usize]) -> BTreeSet<E> {
    (0..c.len()).map(|i| e(c[i], c[(i + 1) % c.len()])).collect()
}

/// Edge pairs that share a simple cycle; reflexive on non-bridges.
fn share_cycle(adj: &[u32]) -> BTreeSet<(E, E)> {
    let mut out = BTreeSet::new();
    for c in simple_cycles(adj) {
        let es = cycle_edges(&c);
        for &a in &es {
            for &b in &es {
                out.insert((a, b));
            }
        }
    }
    out
}

fn without(adj: &[u32], a: usize, b: usize) -> Vec<u32> {
    let mut adj = adj.to_vec();
    adj[a] &= !(1 << b);
    adj[b] &= !(1 << a);
    adj
}

fn random_orientation(rng: &mut ChaCha8Rng, adj: &[u32]) -> OwnedNetwork {
    let n = adj.len();
    let mut bought = Vec::new();
    for (a, &row) in adj.iter().enumerate() {
        for b in a + 1..n {
            if row >> b & 1 == 1 {
                match rng.gen_range(0..10) {
                    0 => bought.extend([(a, b), (b, a)]),
                    1..=5 => bought.push((a, b)),
                    _ => bought.push((b, a)),
                }
            }
        }
    }
    OwnedNetwork::new(n, &bought).unwrap()
}

#[test]
fn components_are_the_classes_of_edges_sharing_a_cycle() {
    for n in 3..=5 {
        for adj in labelled_connected(n) {
            let net = low_owner(&adj);
            let share = share_cycle(&adj);
            let comps = biconnected_components(&net);
            let mut seen = BTreeSet::new();
            for h in &comps {
                assert!(h.vertices.len() >= 3);
                for &x in &h.edges {
                    assert!(seen.insert(x));
                    for &y in &h.edges {
                        assert!(share.contains(&(x, y)), "{adj:?}: {x:?} {y:?}");
                    }
                }
            }
            let on_cycles: BTreeSet<E> = share.iter().map(|p| p.0).collect();
            assert_eq!(seen, on_cycles);
        }
    }
}

#[test]
fn min_cycle_through_each_edge_is_shortest_and_min() {
    for n in 3..=5 {
        for adj in labelled_connected(n) {
            let net = low_owner(&adj);
            let cycles = simple_cycles(&adj);
            for h in biconnected_components(&net) {
                for &(a, b) in &h.edges {
                    let c = min_cycle_through_edge(&net, &h, (a, b)).unwrap();
                    assert_eq!(&c.vertices[..2], &[a, b]);
                    assert!(c.is_min && is_min(&adj, &c.vertices));
                    let shortest = cycles.iter().filter(|k| cycle_edges(k).contains(&e(a, b))).map(Vec::len).min();
                    assert_eq!(Some(c.length), shortest);
                }
            }
        }
    }
}

#[test]
fn min_cycle_list_is_exactly_the_min_simple_cycles() {
    for adj in labelled_connected(5) {
        let net = low_owner(&adj);
        let mut expected: Vec<BTreeSet<E>> =
            simple_cycles(&adj).iter().filter(|c| is_min(&adj, c)).map(|c| cycle_edges(c)).collect();
        let mut got: Vec<BTreeSet<E>> = min_cycles(&net).iter().map(|c| cycle_edges(&c.vertices)).collect();
        expected.sort();
        got.sort();
        assert_eq!(got, expected, "{adj:?}");
        for c in simple_cycles(&adj) {
            assert_eq!(is_min_cycle(&net, &c).unwrap(), is_min(&adj, &c));
        }
    }
}

#[test]
fn centroids_match_brute_force() {
    for n in 1..=9 {
        for g in trees(n) {
            let tree = OwnedNetwork::new(n, &g.edges()).unwrap();
            let adj = adjacency(n, &masks(&tree));
            let expected: Vec<usize> = (0..n)
                .filter(|&c| {
                    // Component sizes of T - c via distances in the cut graph.
                    let mut cut = adj.clone();
                    for x in 0..n {
                        cut = without(&cut, c, x);
                    }
                    let d = floyd(&cut);
                    (0..n).filter(|&x| x != c).all(|x| d[x].iter().filter(|v| v.is_some()).count() * 2 <= n)
                })
                .collect();
            assert_eq!(centroids(&tree).unwrap().centroids, expected);
        }
    }
}

/// Number of `(v1, v2, u')` choices making `<v, u>` a critical pair, and
/// whether one of them is strong, straight from the five properties.
fn brute_pair(net: &OwnedNetwork, share: &BTreeSet<(E, E)>, v: usize, u: usize) -> (usize, bool) {
    let adj = adjacency(net.n(), &masks(net));
    let d = floyd(&adj);
    let mut count = 0;
    let mut strong = false;
    if u == v || d[v][u].is_none_or(|x| x < 2) {
        return (0, false);
    }
    for &v1 in net.strategy(v) {
        for &v2 in net.strategy(v) {
            for &up in net.strategy(u) {
                let (f1, f2, g) = (e(v, v1), e(v, v2), e(u, up));
                let same = share.contains(&(f1, f2)) && share.contains(&(f1, g));
                if v1 == v2 || up == v || !same {
                    continue;
                }
                if d[v1][u].map(|x| x + 1) != d[v][u] {
                    continue;
                }
                if floyd(&without(&adj, u, up))[v][up] != d[v][up] {
                    continue;
                }
                count += 1;
                strong |= floyd(&without(&adj, v, v2))[u][v2] == d[u][v2];
            }
        }
    }
    (count, strong)
}

fn check_pairs(net: &OwnedNetwork) {
    let adj = adjacency(net.n(), &masks(net));
    let share = share_cycle(&adj);
    let found = critical_pairs(net);
    let mut expected = Vec::new();
    for v in 0..net.n() {
        for u in 0..net.n() {
            let (count, strong) = brute_pair(net, &share, v, u);
            if count > 0 {
                expected.push((v, u, count, strong));
            }
        }
    }
    let mut got: Vec<_> = found.iter().map(|p| (p.v, p.u, p.choices, p.strong)).collect();
    got.sort();
    assert_eq!(got, expected, "{:?}", net.bought_edges());
}

#[test]
fn critical_pairs_match_the_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for adj in labelled_connected(5) {
        check_pairs(&random_orientation(&mut rng, &adj));
    }
    for _ in 0..300 {
        let n = rng.gen_range(5..=8);
        let mut bought: Vec<E> = (1..n).map(|b| (rng.gen_range(0..b), b)).collect();
        for _ in 0..rng.gen_range(1..=4) {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b {
                bought.push((a, b));
            }
        }
        let bought: Vec<E> = bought.into_iter().map(|(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) }).collect();
        check_pairs(&OwnedNetwork::new(n, &bought).unwrap());
    }
}

#[test]
fn detour_witnesses_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut found = 0;
    for _ in 0..400 {
        let n = rng.gen_range(6..=9);
        let mut bought: Vec<E> = (1..n).map(|b| (rng.gen_range(0..b), b)).collect();
        for _ in 0..rng.gen_range(2..=4) {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b {
                bought.push((a, b));
            }
        }
        let bought: Vec<E> = bought.into_iter().map(|(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) }).collect();
        let net = OwnedNetwork::new(n, &bought).unwrap();
        let Ok(w) = cool_path_witness(&net) else { continue };
        found += 1;
        let adj = adjacency(n, &masks(&net));
        let d = floyd(&adj);
        let p = &w.pair;
        assert!(brute_pair(&net, &share_cycle(&adj), p.v, p.u).0 > 0);
        assert_eq!((w.path[0], *w.path.last().unwrap()), (p.v, p.v2));
        let mut seen = BTreeSet::new();
        for s in w.path.windows(2) {
            assert!(net.has_edge(s[0], s[1]));
            assert!(e(s[0], s[1]) != e(p.v, p.v1) && e(s[0], s[1]) != e(p.v, p.v2));
            assert!(seen.insert(s[0]));
        }
        assert!(w.path_length() as u64 <= 2 * d[p.u][p.v].unwrap());
        for x in 0..n {
            if let Some(px) = w.tree.parent[x] {
                assert!(net.has_edge(x, px));
                assert_eq!(d[p.v][x], d[p.v][px].map(|y| y + 1));
            }
        }
    }
    assert!(found > 0);
}
