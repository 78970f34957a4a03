mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bnpg::format::{parse_game, write_game};
use bnpg::gen::{self, gen_graph, GraphKind, GraphSpec, UtilityFamilyParams};
use bnpg::heuristic::{evolve, find_approx_psne, stream_rng, HeuristicParams};
use bnpg::kcore::k_core;
use bnpg::report::Status;
use bnpg::{oracle, ActionProfile, BnpgInstance, Graph};

fn game_from_seed(seed: u64, n: usize, p: f64, homogeneous: bool) -> BnpgInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = common::random_graph(&mut rng, n, p);
    if homogeneous {
        common::homogeneous(&mut rng, graph)
    } else {
        common::heterogeneous(&mut rng, graph)
    }
}

fn arb_game() -> impl Strategy<Value = BnpgInstance> {
    (any::<u64>(), 1usize..=8, 0.0f64..=1.0, any::<bool>())
        .prop_map(|(seed, n, p, homogeneous)| game_from_seed(seed, n, p, homogeneous))
}

fn arb_game_and_profile() -> impl Strategy<Value = (BnpgInstance, ActionProfile)> {
    arb_game().prop_flat_map(|game| {
        let n = game.n();
        (Just(game), proptest::collection::vec(any::<bool>(), n).prop_map(ActionProfile::new))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn psne_iff_zero_epsilon((game, x) in arb_game_and_profile()) {
        let psne = game.is_psne(&x).unwrap();
        prop_assert_eq!(psne, game.max_epsilon(&x, false).unwrap() == 0.0);
        prop_assert_eq!(psne, game.max_epsilon(&x, true).unwrap() == 0.0);
    }

    #[test]
    fn best_response_matches_threshold_form((game, x) in arb_game_and_profile()) {
        for i in 0..game.n() {
            let t = game.neighbor_invest_count(&x, i).unwrap();
            let d = game.delta_g(i, t).unwrap();
            prop_assert!(d >= 0.0);
            let threshold = if x.get(i) { d >= game.cost(i) } else { d <= game.cost(i) };
            let mut flipped = x.clone();
            flipped.set(i, !x.get(i));
            let direct = game.utility(&x, i).unwrap() >= game.utility(&flipped, i).unwrap();
            prop_assert_eq!(game.is_best_response(&x, i).unwrap(), threshold);
            prop_assert_eq!(threshold, direct);
        }
    }

    #[test]
    fn utility_ignores_non_neighbors(
        (game, x) in arb_game_and_profile(),
        shuffle_seed in any::<u64>(),
    ) {
        let n = game.n();
        for i in 0..n {
            // permute the actions of everybody outside i's closed neighborhood
            let outside: Vec<usize> = (0..n)
                .filter(|&v| v != i && !game.graph().has_edge(i, v))
                .collect();
            let mut values: Vec<bool> = outside.iter().map(|&v| x.get(v)).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(shuffle_seed);
            use rand::seq::SliceRandom;
            values.shuffle(&mut rng);
            let mut y = x.clone();
            for (&v, &a) in outside.iter().zip(&values) {
                y.set(v, !a);
            }
            prop_assert_eq!(game.utility(&x, i).unwrap(), game.utility(&y, i).unwrap());
        }
    }

    #[test]
    fn oracle_min_epsilon_is_zero_iff_psne_exists(game in arb_game()) {
        let result = oracle::solve_oracle(&game, 22, true).unwrap();
        prop_assert_eq!(result.min_epsilon.1 == 0.0, !result.all_psne.is_empty());
        let brute = (0..1u64 << game.n())
            .map(|m| game.max_epsilon(&ActionProfile::from_mask(game.n(), m), true).unwrap())
            .fold(f64::INFINITY, f64::min);
        prop_assert_eq!(result.min_epsilon.1, brute);
    }

    #[test]
    fn evolve_never_worsens(game in arb_game(), seed in any::<u64>(), trials in 1usize..6) {
        let mut rng = stream_rng(seed, 1);
        let start = ActionProfile::zeros(game.n());
        let before = game.max_epsilon(&start, true).unwrap();
        let (x, eps) = evolve(&game, &start, trials, &mut rng, true);
        prop_assert!(eps <= before);
        prop_assert_eq!(eps, game.max_epsilon(&x, true).unwrap());
    }

    #[test]
    fn reported_epsilon_is_exact(game in arb_game(), seed in any::<u64>()) {
        let params = HeuristicParams { seed, ..Default::default() };
        let report = find_approx_psne(&game, &params).unwrap();
        match report.status {
            Status::Psne(ref x) => prop_assert!(game.is_psne(x).unwrap()),
            Status::ApproxPsne { ref profile, epsilon } => {
                prop_assert!(epsilon > 0.0);
                prop_assert_eq!(epsilon, game.max_epsilon(profile, true).unwrap());
            }
            Status::NoPsne => prop_assert!(false, "heuristic cannot certify non-existence"),
        }
    }

    #[test]
    fn k_core_matches_naive_fixed_point(seed in any::<u64>(), n in 1usize..14, p in 0.0f64..1.0, k in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let graph = common::random_graph(&mut rng, n, p);
        let mut alive: Vec<bool> = vec![true; n];
        loop {
            let drop: Vec<usize> = (0..n)
                .filter(|&v| alive[v])
                .filter(|&v| graph.neighbors(v).iter().filter(|&&u| alive[u]).count() < k)
                .collect();
            if drop.is_empty() {
                break;
            }
            for v in drop {
                alive[v] = false;
            }
        }
        let naive: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        prop_assert_eq!(k_core(&graph, k), naive);
    }

    #[test]
    fn generated_games_are_valid_and_round_trip(
        seed in any::<u64>(),
        n in 6usize..60,
        gamma in 0.0f64..=1.0,
        kind in 0usize..6,
    ) {
        let kind = match kind {
            0 => GraphKind::RandomTree,
            1 => GraphKind::ErdosRenyi { p: 0.2 },
            2 => GraphKind::BarabasiAlbert { m: 2, exponent: None },
            3 => GraphKind::BarabasiAlbert { m: 3, exponent: Some(2.3) },
            4 => GraphKind::WattsStrogatz { k: 4, p: 0.2 },
            _ => GraphKind::Cycle,
        };
        let graph = gen_graph(&GraphSpec { n, seed, kind }).unwrap();
        prop_assert!(graph.violations().is_empty());
        let game = gen::gen_utilities(graph, &UtilityFamilyParams::new(gamma), seed).unwrap();
        prop_assert!(game.validate().is_empty());
        let text = write_game(&game, None);
        let back = parse_game(&text).unwrap().instance;
        prop_assert_eq!(back.graph(), game.graph());
        prop_assert_eq!(back.costs(), game.costs());
        prop_assert_eq!(back.tables(), game.tables());
    }
}

#[test]
fn complete_graph_welfare_identity() {
    // with k investors on a complete graph every player's externality is g(k)
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let n = 2 + (rand::Rng::random_range(&mut rng, 0..8));
        let game = common::homogeneous(&mut rng, Graph::complete(n));
        for mask in 0..1u64 << n {
            let x = ActionProfile::from_mask(n, mask);
            let k = x.invest_count();
            let investing_cost: f64 = x.investors().map(|i| game.cost(i)).sum();
            let expected = n as f64 * game.table(0).get(k).unwrap() - investing_cost;
            assert_eq!(game.social_welfare(&x).unwrap(), expected);
        }
    }
}
