//! Randomized invariants over arbitrary small networks.

#![allow(clippy::needless_range_loop)]

mod common;

use common::{adjacency, cost, floyd, masks};
use ncg_core::game::{apply_deviation, Deviation, Game, Mode};
use ncg_core::graph::{parse_network, serialize_network, DistanceMatrix, Dist, OwnedNetwork};
use ncg_core::harness::canon::network_key;
use ncg_core::harness::{proof_deviation_oracle, OracleLemma};
use ncg_core::rational::{Alpha, Cost};
use proptest::prelude::*;

fn arb_network(max_n: usize) -> impl Strategy<Value = OwnedNetwork> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=2 * n).prop_map(move |pairs| {
            let bought: Vec<_> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            OwnedNetwork::new(n, &bought).unwrap()
        })
    })
}

fn arb_alpha() -> impl Strategy<Value = Alpha> {
    (0i128..40, 1i128..5).prop_map(|(p, q)| Alpha::new(p, q).unwrap())
}

fn perm_of(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn text_round_trip(net in arb_network(9)) {
        prop_assert_eq!(parse_network(&serialize_network(&net)).unwrap(), net);
    }

    #[test]
    fn distances_match_floyd(net in arb_network(9)) {
        let dm = DistanceMatrix::new(&net);
        let d = floyd(&adjacency(net.n(), &masks(&net)));
        for a in 0..net.n() {
            for b in 0..net.n() {
                let expected = d[a][b].map_or(Dist::Infinite, Dist::Finite);
                prop_assert_eq!(dm.get(a, b), expected);
            }
        }
    }

    #[test]
    fn costs_after_any_deviation_match_scratch(
        net in arb_network(7),
        alpha in arb_alpha(),
        agent_seed in any::<usize>(),
        new_mask in any::<u32>(),
    ) {
        let n = net.n();
        let u = agent_seed % n;
        let strategy = (0..n).filter(|&v| v != u && new_mask >> v & 1 == 1).collect();
        let d = Deviation::replace(&net, u, strategy);
        let after = apply_deviation(&net, &d).unwrap();
        let game = Game::new(alpha);
        let expected = cost(n, &masks(&after), alpha.value(), u).map_or(Cost::Infinite, Cost::Finite);
        prop_assert_eq!(game.agent_cost(&after, u).total, expected);
    }

    #[test]
    fn relabelling_preserves_key_cost_and_stability(
        (net, perm) in arb_network(6).prop_flat_map(|net| { let n = net.n(); (Just(net), perm_of(n)) }),
        alpha in arb_alpha(),
    ) {
        let other = net.relabel(&perm);
        let game = Game::new(alpha);
        prop_assert_eq!(network_key(&net), network_key(&other));
        prop_assert_eq!(game.social_cost(&net), game.social_cost(&other));
        prop_assert_eq!(game.is_stable(&net, Mode::Exact).unwrap(), game.is_stable(&other, Mode::Exact).unwrap());
    }

    #[test]
    fn best_response_never_worsens(net in arb_network(7), alpha in arb_alpha()) {
        let game = Game::new(alpha);
        for u in 0..net.n() {
            let br = game.best_response(&net, u, Mode::Exact).unwrap();
            prop_assert!(br.cost <= br.current_cost);
            let single = game.best_response(&net, u, Mode::SingleMove).unwrap();
            prop_assert!(br.cost <= single.cost && single.cost <= single.current_cost);
        }
    }

    #[test]
    fn exact_stable_implies_single_move_stable(net in arb_network(6), alpha in arb_alpha()) {
        let game = Game::new(alpha);
        if game.is_stable(&net, Mode::Exact).unwrap() {
            prop_assert!(game.is_stable(&net, Mode::SingleMove).unwrap());
        }
    }

    #[test]
    fn oracles_are_deterministic(net in arb_network(8), alpha in arb_alpha()) {
        for lemma in OracleLemma::ALL {
            prop_assert_eq!(proof_deviation_oracle(lemma, &net, alpha), proof_deviation_oracle(lemma, &net, alpha));
        }
    }

    #[test]
    fn decimal_and_fraction_agree(p in 0i128..100_000, digits in 0u32..5) {
        let scale = 10i128.pow(digits);
        let text = if digits == 0 {
            p.to_string()
        } else {
            format!("{}.{:0width$}", p / scale, p % scale, width = digits as usize)
        };
        let a: Alpha = text.parse().unwrap();
        prop_assert_eq!(a, format!("{p}/{scale}").parse::<Alpha>().unwrap());
    }
}
