//! Enumeration counts, equilibrium sets against brute force, dedupe
//! soundness, lemma runs, oracles and search, plus worker independence.

mod common;

use std::collections::BTreeMap;

use common::{all_profiles, brute_canonical, masks, network, q, social, stable};
use ncg_core::game::Mode;
use ncg_core::graph::OwnedNetwork;
use ncg_core::harness::canon::network_key;
use ncg_core::harness::{
    counterexample_search, enumerate_profiles, find_equilibria, proof_deviation_oracle, run_oracle_samples, verify_lemma,
    EnumerationSpec, LemmaId, LemmaOptions, OracleLemma, Space,
};
use ncg_core::rational::{Alpha, Cost};
use ncg_core::structure::{critical_pairs, find_triangle};

fn alpha(s: &str) -> Alpha {
    s.parse().unwrap()
}

#[test]
fn profile_counts() {
    assert_eq!(enumerate_profiles(&EnumerationSpec::new(2, Space::ProfileSpace)).unwrap().len(), 4);
    assert_eq!(enumerate_profiles(&EnumerationSpec::new(3, Space::ProfileSpace)).unwrap().len(), 64);
    let labelled = EnumerationSpec::new(3, Space::GraphFirst).with_dedupe(false);
    assert_eq!(enumerate_profiles(&labelled).unwrap().len(), 20);
    assert_eq!(enumerate_profiles(&EnumerationSpec::new(4, Space::ProfileSpace)).unwrap().len(), 4096);
}

#[test]
fn small_equilibrium_sets() {
    let r = find_equilibria(&EnumerationSpec::new(2, Space::ProfileSpace), alpha("1")).unwrap();
    let mut nets: Vec<_> = r.equilibria.iter().map(|e| e.network.bought_edges()).collect();
    nets.sort();
    assert_eq!(nets, [vec![(0, 1)], vec![(1, 0)]]);

    let r = find_equilibria(&EnumerationSpec::new(3, Space::ProfileSpace), alpha("0.4")).unwrap();
    let triangle = OwnedNetwork::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    assert!(r.equilibria.iter().any(|e| e.network == triangle));

    let r = find_equilibria(&EnumerationSpec::new(4, Space::ProfileSpace), alpha("10")).unwrap();
    assert!(!r.equilibria.is_empty() && r.equilibria.iter().all(|e| e.is_tree && e.network.is_tree()));
}

#[test]
fn profile_space_equilibria_match_brute_force() {
    for (n, a) in [(3, "1/2"), (3, "2"), (4, "1/2"), (4, "13/4")] {
        let r = find_equilibria(&EnumerationSpec::new(n, Space::ProfileSpace), alpha(a)).unwrap();
        let mut got: Vec<_> = r.equilibria.iter().map(|e| e.network.clone()).collect();
        let mut expected: Vec<_> =
            all_profiles(n).into_iter().filter(|s| stable(n, s, q(a))).map(|s| network(n, &s)).collect();
        got.sort();
        expected.sort();
        assert_eq!(got, expected, "n {n} alpha {a}");
        for e in &r.equilibria {
            assert_eq!(e.social_cost, social(n, &masks(&e.network), q(a)).map_or(Cost::Infinite, Cost::Finite));
        }
    }
}

/// Social cost, stability and brute-force canonical purchase list.
type ClassData = (Option<common::Q>, bool, Vec<(usize, usize)>);

#[test]
fn dedupe_preserves_cost_and_verdict_per_class() {
    let a = "2";
    let mut classes: BTreeMap<_, ClassData> = BTreeMap::new();
    for s in all_profiles(4) {
        let net = network(4, &s);
        let entry = (social(4, &s, q(a)), stable(4, &s, q(a)), brute_canonical(&net));
        match classes.get(&network_key(&net)) {
            Some(seen) => assert_eq!(seen, &entry, "{:?}", net.bought_edges()),
            None => {
                classes.insert(network_key(&net), entry);
            }
        }
    }
    // Distinct keys are distinct isomorphism classes.
    let mut reps: Vec<_> = classes.values().map(|c| c.2.clone()).collect();
    reps.sort();
    reps.dedup();
    assert_eq!(reps.len(), classes.len());
}

#[test]
fn graph_first_agrees_with_profile_space_at_four() {
    for a in ["1/2", "1", "2", "13/4", "20"] {
        let p = find_equilibria(&EnumerationSpec::new(4, Space::ProfileSpace).with_dedupe(true), alpha(a)).unwrap();
        let g = find_equilibria(&EnumerationSpec::new(4, Space::GraphFirst), alpha(a)).unwrap();
        assert_eq!(p.equilibria, g.equilibria, "alpha {a}");
    }
}

#[test]
fn lemma_examples() {
    let one = |a: &str| LemmaOptions { alphas: vec![alpha(a)], ..LemmaOptions::default() };
    let r = verify_lemma(LemmaId::L1, 5, &one("3")).unwrap();
    assert!(r.passed() && r.runs[0].equilibria > 0);

    let opts = LemmaOptions { alphas: vec![alpha("3.25"), alpha("4"), alpha("20")], ..LemmaOptions::default() };
    let r = verify_lemma(LemmaId::T1, 4, &opts).unwrap();
    assert!(r.passed() && r.runs.iter().all(|x| x.equilibria > 0));

    let r = verify_lemma(LemmaId::L9, 5, &one("8")).unwrap();
    assert!(r.passed() && r.runs[0].checked > 0);

    assert!(verify_lemma(LemmaId::L3, 5, &one("10")).is_err());
    assert!(verify_lemma(LemmaId::L1, 5, &one("2")).is_err());
}

#[test]
fn oracle_examples() {
    // Triangle with padding trees, alpha above (n - 1) / 2.
    let net = OwnedNetwork::new(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (2, 5)]).unwrap();
    assert!(find_triangle(&net).is_some());
    let o = proof_deviation_oracle(OracleLemma::L1, &net, alpha("4")).unwrap();
    assert!(o.bound_holds && o.improving);

    // Square where agent 0 owns two cycle edges, alpha = n.
    let net = OwnedNetwork::new(5, &[(0, 1), (0, 3), (1, 2), (3, 2), (2, 4)]).unwrap();
    let o = proof_deviation_oracle(OracleLemma::L2, &net, alpha("5")).unwrap();
    assert!(o.bound_holds && o.improving);
    assert!(o.deviations.iter().any(|d| d.label == "swap-delete" && d.improving));

    // Theta graph with a strong critical pair, alpha = 2n - 5.
    let net = OwnedNetwork::new(7, &[(0, 1), (0, 3), (1, 2), (3, 4), (0, 5), (5, 6), (6, 2), (4, 2)]).unwrap();
    assert!(critical_pairs(&net).iter().any(|p| p.strong));
    let o = proof_deviation_oracle(OracleLemma::L5, &net, alpha("9")).unwrap();
    assert!(o.bound_holds);
    assert_eq!(o.deviations.len(), 2);

    let path = OwnedNetwork::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    assert!(proof_deviation_oracle(OracleLemma::L1, &path, alpha("4")).is_err());
}

#[test]
fn oracle_outcomes_are_deterministic() {
    let a = run_oracle_samples(OracleLemma::L5, 7, None, 300, 9, 1).unwrap();
    let b = run_oracle_samples(OracleLemma::L5, 7, None, 300, 9, 1).unwrap();
    assert_eq!(a, b);
    assert!(a.passed());
}

#[test]
fn search_examples() {
    let r = counterexample_search(4, alpha("10"), 300, 0, Mode::SingleMove, 1).unwrap();
    assert!(r.candidates.is_empty());
    let r = counterexample_search(8, alpha("0.5"), 1000, 0, Mode::SingleMove, 1).unwrap();
    assert!(!r.candidates.is_empty());
    let r = counterexample_search(8, alpha("0.5"), 0, 0, Mode::SingleMove, 1).unwrap();
    assert!(r.candidates.is_empty());
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let json = |w: usize| {
        let spec = EnumerationSpec::new(5, Space::GraphFirst).with_workers(w);
        let e = find_equilibria(&spec, alpha("3")).unwrap();
        let opts = LemmaOptions { workers: w, oracle_samples: 200, seed: 4, ..LemmaOptions::default() };
        let l = verify_lemma(LemmaId::L2, 5, &opts).unwrap();
        let s = counterexample_search(7, alpha("2"), 100, 4, Mode::SingleMove, w).unwrap();
        serde_json::to_string(&(e, l, s)).unwrap()
    };
    assert_eq!(json(1), json(8));
}
