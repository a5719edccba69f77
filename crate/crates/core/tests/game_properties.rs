mod common;

use netgame::bounds::eta;
use netgame::game::{
    best_response, enumerate_equilibria, is_nash, make_benefit, max_aggregate_play, sigma_b,
    specialized_equilibria, EffortProfile, GameConfig,
};
use netgame::graph::{independence_number, is_k_dominating_independent};
use netgame::lcp::ics_decomposition;
use proptest::prelude::*;
use proptest::sample::select;

use common::{max_abs_diff, strategy};

fn cfg(delta: f64, e_star: f64) -> GameConfig {
    GameConfig::new(delta, e_star, 1.0, 1e-9).unwrap()
}

fn max_play(g: &netgame::Graph, c: &GameConfig) -> f64 {
    enumerate_equilibria(g, c, 20)
        .unwrap()
        .iter()
        .map(EffortProfile::total)
        .fold(f64::NEG_INFINITY, f64::max)
}

proptest! {
    #[test]
    fn equilibria_are_fixed_points(
        g in strategy::graph(1, 8),
        delta in 0.05f64..=1.0,
        e in 0.2f64..5.0,
    ) {
        let c = cfg(delta, e);
        for x in enumerate_equilibria(&g, &c, 20).unwrap() {
            prop_assert!(is_nash(&g, &c, &x));
            for i in 0..g.n() {
                prop_assert!((x.as_slice()[i] - best_response(&g, &c, &x, i)).abs() <= 1e-9 * e);
            }
        }
    }

    #[test]
    fn nash_profiles_are_enumerated(
        g in strategy::graph(1, 7),
        delta in 0.05f64..=1.0,
        picks in proptest::collection::vec(0usize..4, 7),
    ) {
        let c = cfg(delta, 1.0);
        let found = enumerate_equilibria(&g, &c, 20).unwrap();
        let levels = [0.0, 1.0, 1.0 / (1.0 + delta), 1.0 / (1.0 + 2.0 * delta)];
        let x = EffortProfile::new(picks[..g.n()].iter().map(|&k| levels[k]).collect());
        if is_nash(&g, &c, &x) {
            prop_assert!(found.iter().any(|y| max_abs_diff(y.as_slice(), x.as_slice()) <= 1e-9));
        }
        for y in &found {
            let mut bumped = y.clone().into_vec();
            bumped[0] += 1e-3;
            prop_assert!(!is_nash(&g, &c, &EffortProfile::new(bumped)));
        }
    }

    #[test]
    fn max_play_falls_with_delta(g in strategy::graph(1, 8), a in 0.05f64..=1.0, b in 0.05f64..=1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(max_play(&g, &cfg(hi, 1.0)) <= max_play(&g, &cfg(lo, 1.0)) + 1e-9);
    }

    #[test]
    fn max_play_at_least_alpha(g in strategy::graph(1, 8), delta in 0.05f64..=1.0, e in 0.2f64..5.0) {
        let alpha = independence_number(&g).0 as f64;
        prop_assert!(max_play(&g, &cfg(delta, e)) >= e * alpha - 1e-9 * e);
    }

    #[test]
    fn maximizer_is_clique_supported_above_threshold(g in strategy::graph(1, 8), u in 0.0f64..=1.0) {
        let t = eta(&g).max(0.05);
        let delta = t + u * (1.0 - t);
        let best = max_aggregate_play(&g, &cfg(delta, 1.0), 20).unwrap();
        prop_assert!(best.diagnostics.is_empty(), "{:?}", best.diagnostics);
        let cliques = best.ice_cliques.clone().unwrap();
        prop_assert_eq!(cliques.len(), best.alpha);
        let x = best.argmax.iter().find(|x| {
            ics_decomposition(&g, x.as_slice(), delta, 1e-9).is_some_and(|c| c.len() == best.alpha)
        });
        prop_assert!(x.is_some());
    }

    #[test]
    fn specialized_profiles_are_dominating_sets(g in strategy::graph(1, 8), delta in select(vec![1.0, 0.9, 0.6, 0.4])) {
        let c = cfg(delta, 2.0);
        let k = (1.0 / delta).ceil() as usize;
        let all = enumerate_equilibria(&g, &c, 20).unwrap();
        for x in specialized_equilibria(&g, &c, 20).unwrap() {
            let s = x.support(1e-9);
            prop_assert!(is_k_dominating_independent(&g, &s, k));
            prop_assert!(all.iter().any(|y| max_abs_diff(y.as_slice(), x.as_slice()) <= 1e-9));
        }
    }

    #[test]
    fn benefit_is_increasing_and_concave(
        n in 2usize..30,
        delta in 0.05f64..=1.0,
        t in 0.01f64..0.99,
        e in 0.2f64..5.0,
        cost in 0.1f64..3.0,
    ) {
        let c = GameConfig::new(delta, e, cost, 1e-9).unwrap();
        let spec = make_benefit(&c, n, t, 1.0).unwrap();
        prop_assert!((sigma_b(&spec, n, delta).unwrap() - t).abs() <= 1e-9);
        let top = e * (1.0 + delta * (n - 1) as f64);
        for k in 0..1000 {
            let y = top * k as f64 / 999.0;
            prop_assert!(spec.derivative(y) > 0.0);
            prop_assert!(spec.second_derivative(y) < 0.0);
        }
    }

    #[test]
    fn received_effort_sits_between_secant_and_tangent(
        g in strategy::graph(2, 8),
        delta in 0.05f64..=1.0,
        t in 0.01f64..0.99,
    ) {
        let c = GameConfig::new(delta, 1.5, 0.7, 1e-9).unwrap();
        let spec = make_benefit(&c, g.n(), t, 2.0).unwrap();
        let b_e = spec.value(c.e_star);
        for x in enumerate_equilibria(&g, &c, 20).unwrap() {
            for i in 0..g.n() {
                let r = c.received(&g, x.as_slice(), i);
                let b = spec.value(r);
                let slack = 1e-9 * b.abs().max(1.0);
                prop_assert!(b >= b_e + c.cost * t * (r - c.e_star) - slack);
                prop_assert!(b <= b_e + c.cost * (r - c.e_star) + slack);
            }
        }
    }
}
