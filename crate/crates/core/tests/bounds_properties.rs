mod common;

use netgame::bounds::{
    aggregate_bounds, eta, line_bounds, max_welfare_bounds, star_equilibrium, tree_bounds,
    tree_welfare_bounds, welfare_profile_bounds,
};
use netgame::game::{enumerate_equilibria, make_benefit, welfare, EffortProfile, GameConfig};
use netgame::graph::{tree_structure, unique_max_independent_set, TreeKind};
use netgame::Graph;
use proptest::prelude::*;

use common::{max_abs_diff, strategy};

fn cfg(delta: f64, e_star: f64) -> GameConfig {
    GameConfig::new(delta, e_star, 1.0, 1e-9).unwrap()
}

fn equilibria(g: &Graph, c: &GameConfig) -> Vec<EffortProfile> {
    enumerate_equilibria(g, c, 20).unwrap()
}

fn max_play(g: &Graph, c: &GameConfig) -> f64 {
    equilibria(g, c)
        .iter()
        .map(EffortProfile::total)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Maps `u ∈ [0, 1)` into `[lo, 1)`.
fn delta_from(lo: f64, u: f64) -> f64 {
    lo + u * (1.0 - lo)
}

proptest! {
    #[test]
    fn aggregate_report_contains_max_play(g in strategy::graph(1, 8), u in 0.0f64..0.999, e in 0.2f64..5.0) {
        let delta = delta_from(eta(&g).max(0.05), u);
        let r = aggregate_bounds(&g, delta, e).unwrap();
        let best = max_play(&g, &cfg(delta, e));
        prop_assert!(r.contains(best, 1e-9 * e), "{} not in [{}, {}]", best, r.lower, r.upper);
        if unique_max_independent_set(&g).is_some() {
            prop_assert!((r.exact.unwrap() - best).abs() <= 1e-9 * e);
        }
    }

    #[test]
    fn welfare_between_lower_and_tangent(
        g in strategy::graph(2, 7),
        u in 0.0f64..0.999,
        t in 0.01f64..0.99,
    ) {
        let delta = delta_from(eta(&g).max(0.05), u);
        let c = GameConfig::new(delta, 1.3, 0.8, 1e-9).unwrap();
        let spec = make_benefit(&c, g.n(), t, 2.0).unwrap();
        let mut best = f64::NEG_INFINITY;
        for x in equilibria(&g, &c) {
            let w = welfare(&g, &c, &spec, &x);
            best = best.max(w);
            let r = welfare_profile_bounds(&g, &c, &spec, &x).unwrap();
            let slack = 1e-9 * w.abs().max(1.0);
            prop_assert!(w >= r.lower - slack);
            prop_assert!(w <= r.alternate_value("welfare-profile-upper-tangent").unwrap() + slack);
        }
        let r = max_welfare_bounds(&g, &c, &spec, 20).unwrap();
        let slack = 1e-9 * best.abs().max(1.0);
        prop_assert!(best >= r.lower - slack, "W* {} below {}", best, r.lower);
        prop_assert!(best <= r.alternate_value("welfare-max-upper-tangent").unwrap() + slack);
    }

    #[test]
    fn tree_reports_contain_max_play(g in strategy::tree(12), u in 0.0f64..0.999) {
        let delta = delta_from(0.5, u);
        let r = tree_bounds(&g, delta, 1.0).unwrap();
        let best = max_play(&g, &cfg(delta, 1.0));
        prop_assert!(r.applicable);
        prop_assert!(r.contains(best, 1e-9), "{} not in [{}, {}]", best, r.lower, r.upper);
        if let Some(v) = r.exact {
            prop_assert!((v - best).abs() <= 1e-9);
        }
    }

    #[test]
    fn tree_welfare_contains_max_welfare(g in strategy::tree(11), u in 0.0f64..0.999, t in 0.01f64..0.99) {
        prop_assume!(tree_structure(&g).kind != TreeKind::Line);
        let delta = delta_from(0.5, u);
        let c = cfg(delta, 1.0);
        let spec = make_benefit(&c, g.n(), t, 1.0).unwrap();
        let best = equilibria(&g, &c)
            .iter()
            .map(|x| welfare(&g, &c, &spec, x))
            .fold(f64::NEG_INFINITY, f64::max);
        let r = tree_welfare_bounds(&g, &c, &spec).unwrap();
        let slack = 1e-9 * best.abs().max(1.0);
        prop_assert!(best >= r.lower - slack);
        prop_assert!(best <= r.alternate_value("welfare-tree-upper-tangent").unwrap() + slack);
    }

    #[test]
    fn star_closed_form_is_the_only_equilibrium(leaves in 3usize..12, u in 0.0f64..0.999) {
        let delta = delta_from(1.0 / leaves as f64, u);
        let c = cfg(delta, 1.7);
        let (x, r) = star_equilibrium(leaves, &c).unwrap();
        let found = equilibria(&Graph::star(leaves), &c);
        prop_assert_eq!(found.len(), 1);
        prop_assert!(max_abs_diff(found[0].as_slice(), x.as_slice()) <= 1e-9);
        prop_assert!((r.exact.unwrap() - x.total()).abs() <= 1e-9);
    }

    #[test]
    fn line_bounds_hold(n in 1usize..12, u in 0.0f64..0.999) {
        let delta = delta_from(0.5, u);
        let r = line_bounds(n, delta, 1.0).unwrap();
        let best = max_play(&Graph::path(n), &cfg(delta, 1.0));
        prop_assert!(r.contains(best, 1e-9));
        if n % 2 == 1 {
            prop_assert!((r.exact.unwrap() - best).abs() <= 1e-9);
        }
    }
}

#[test]
fn unique_mis_graphs_are_exact() {
    for g in [
        common::two_center_tree(),
        common::line7(),
        Graph::star(5),
        Graph::path(5),
    ] {
        for delta in [0.65, 0.75, 0.95] {
            let r = aggregate_bounds(&g, delta, 1.0).unwrap();
            let best = max_play(&g, &cfg(delta, 1.0));
            assert!(
                (r.exact.unwrap() - best).abs() <= 1e-9,
                "{best} vs {:?}",
                r.exact
            );
        }
    }
}
