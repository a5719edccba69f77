//! Closed-form bounds on maximum aggregate play and welfare.
//!
//! Each function returns a [`BoundsReport`] naming the result it applies and
//! the condition under which it holds. Outside that condition the interval is
//! reported as `(−∞, +∞)` with `applicable = false` instead of extrapolating.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{
    is_nash, max_aggregate_play, nash_report, sigma_b, BenefitSpec, EffortProfile, GameConfig,
};
use crate::graph::{
    clique_number, independence_number, tree_structure, unique_max_independent_set,
    weighted_max_independent_set, Graph, NodeSet, TreeKind, TreeStructure,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    AggregatePlay,
    Welfare,
}

/// A secondary value carried next to the main interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alternate {
    pub tag: String,
    #[serde(with = "crate::serde_util")]
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub quantity: Quantity,
    #[serde(with = "crate::serde_util")]
    pub lower: f64,
    #[serde(with = "crate::serde_util")]
    pub upper: f64,
    pub exact: Option<f64>,
    pub theorem_tags: Vec<String>,
    pub applicability: String,
    pub applicable: bool,
    pub caveats: Vec<String>,
    pub alternates: Vec<Alternate>,
}

impl BoundsReport {
    fn open(quantity: Quantity, applicability: impl Into<String>, applicable: bool) -> Self {
        BoundsReport {
            quantity,
            lower: f64::NEG_INFINITY,
            upper: f64::INFINITY,
            exact: None,
            theorem_tags: Vec::new(),
            applicability: applicability.into(),
            applicable,
            caveats: Vec::new(),
            alternates: Vec::new(),
        }
    }

    fn tag(&mut self, tag: &str) {
        self.theorem_tags.push(tag.to_string());
    }

    fn caveat(&mut self, text: impl Into<String>) {
        self.caveats.push(text.into());
    }

    fn alternate(&mut self, tag: &str, value: f64) {
        self.alternates.push(Alternate {
            tag: tag.to_string(),
            value,
        });
    }

    /// Value of the alternate with this tag.
    pub fn alternate_value(&self, tag: &str) -> Option<f64> {
        self.alternates
            .iter()
            .find(|a| a.tag == tag)
            .map(|a| a.value)
    }

    /// True when `value` lies in `[lower − tol, upper + tol]`.
    pub fn contains(&self, value: f64, tol: f64) -> bool {
        value >= self.lower - tol && value <= self.upper + tol
    }
}

/// Threshold on δ above which the ℓ1-maximal equilibrium is an independent
/// clique equilibrium with α(G) cliques.
pub fn eta(g: &Graph) -> f64 {
    let omega = clique_number(g) as f64;
    if omega <= 1.0 {
        return 0.0;
    }
    let alpha = independence_number(g).0 as f64;
    let w3 = omega - 3.0;
    let clique_term = (w3 + (w3 * w3 + 4.0 * (omega - 1.0)).sqrt()) / (2.0 * (omega - 1.0));
    let alpha_term = (alpha * (omega - 1.0) - omega) / (alpha * (omega - 1.0));
    clique_term.max(alpha_term)
}

fn check_open_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::DeltaOutOfRange(delta))
    }
}

fn ice_factor(alpha: usize) -> f64 {
    let a = alpha as f64;
    a + 1.0 + 1.0 / (a - 1.0)
}

fn complete_graph_play(n: usize, delta: f64, e_star: f64) -> f64 {
    n as f64 * e_star / (1.0 + (n as f64 - 1.0) * delta)
}

/// Bounds on the maximum aggregate play `E*(δ, G)` for `0 < δ < 1`.
pub fn aggregate_bounds(g: &Graph, delta: f64, e_star: f64) -> Result<BoundsReport> {
    check_open_delta(delta)?;
    let (alpha, _) = independence_number(g);
    let eta = eta(g);
    let above_eta = delta >= eta;
    let mut rep = BoundsReport::open(
        Quantity::AggregatePlay,
        format!("lower: all delta; upper: delta >= eta(G) = {eta}"),
        true,
    );
    rep.lower = e_star * alpha as f64;
    rep.tag("aggregate-lower-independence");

    if alpha == 1 {
        let exact = complete_graph_play(g.n(), delta, e_star);
        rep.upper = exact;
        rep.exact = Some(exact);
        rep.tag("aggregate-exact-complete-graph");
        rep.caveat("alpha = 1: the clique-count upper formula is undefined; the complete-graph closed form n e*/(1 + (n-1) delta) is used");
        return Ok(rep);
    }
    if above_eta {
        rep.upper = e_star * ice_factor(alpha);
        rep.tag("aggregate-upper-ice");
        if unique_max_independent_set(g).is_some() {
            rep.exact = Some(rep.lower);
            rep.tag("aggregate-exact-unique-mis");
        }
    } else {
        rep.caveat(format!(
            "delta = {delta} < eta(G) = {eta}: only the lower bound applies"
        ));
    }
    Ok(rep)
}

/// `n (b(e*) − c e*)`, the welfare offset shared by all welfare bounds.
fn welfare_base(n: usize, cfg: &GameConfig, spec: &BenefitSpec) -> f64 {
    n as f64 * (spec.value(cfg.e_star) - cfg.cost * cfg.e_star)
}

fn checked_sigma(g: &Graph, cfg: &GameConfig, spec: &BenefitSpec) -> Result<f64> {
    let s = sigma_b(spec, g.n(), cfg.delta)?;
    if s > 0.0 && s < 1.0 {
        Ok(s)
    } else {
        Err(Error::InvalidArgument(format!(
            "sigma_b = {s} outside (0, 1)"
        )))
    }
}

const TANGENT_CAVEAT: &str = "the sigma_b-scaled upper bound can fall below the welfare of an equilibrium (e.g. any full-support equilibrium); the tangent-line alternate without sigma_b is always valid";

/// Welfare of one equilibrium bracketed by linear functions of its total play.
pub fn welfare_profile_bounds(
    g: &Graph,
    cfg: &GameConfig,
    spec: &BenefitSpec,
    x: &EffortProfile,
) -> Result<BoundsReport> {
    let report = nash_report(g, cfg, x)?;
    if let Some(v) = report.worst {
        return Err(Error::NotEquilibrium {
            node: v.node,
            amount: v.amount,
        });
    }
    let sigma = checked_sigma(g, cfg, spec)?;
    let eta = eta(g);
    let mut rep = BoundsReport::open(
        Quantity::Welfare,
        format!("x is an equilibrium and delta >= eta(G) = {eta}"),
        cfg.delta >= eta,
    );
    let base = welfare_base(g.n(), cfg, spec);
    let total = x.total();
    let (d_min, d_max) = (g.min_degree() as f64, g.max_degree() as f64);
    let c = cfg.cost;
    rep.lower = base + c * ((d_min * cfg.delta + 1.0) * sigma - 1.0) * total;
    rep.upper = base + c * d_max * cfg.delta * sigma * total;
    rep.tag("welfare-profile-lower");
    rep.tag("welfare-profile-upper");
    rep.alternate(
        "welfare-profile-upper-tangent",
        base + c * d_max * cfg.delta * total,
    );
    rep.caveat(TANGENT_CAVEAT);
    if !rep.applicable {
        rep.caveat(format!("delta = {} < eta(G) = {eta}", cfg.delta));
    }
    Ok(rep)
}

/// Bounds on the maximum equilibrium welfare `W*(δ, G)`.
///
/// `cap` limits the enumeration used for the regular-graph limit; when it is
/// exceeded that alternate is omitted.
pub fn max_welfare_bounds(
    g: &Graph,
    cfg: &GameConfig,
    spec: &BenefitSpec,
    cap: usize,
) -> Result<BoundsReport> {
    let sigma = checked_sigma(g, cfg, spec)?;
    let eta = eta(g);
    let mut rep = BoundsReport::open(
        Quantity::Welfare,
        format!("delta >= eta(G) = {eta}"),
        cfg.delta >= eta,
    );
    if !rep.applicable {
        rep.caveat(format!(
            "delta = {} < eta(G) = {eta}: bound does not apply",
            cfg.delta
        ));
        return Ok(rep);
    }
    let base = welfare_base(g.n(), cfg, spec);
    let (d_min, d_max) = (g.min_degree() as f64, g.max_degree() as f64);
    let (c, d, e) = (cfg.cost, cfg.delta, cfg.e_star);
    let lower_coef = c * ((d_min * d + 1.0) * sigma - 1.0);
    let upper_coef = c * d_max * d * sigma;
    let tangent_coef = c * d_max * d;
    let (alpha, _) = independence_number(g);

    let play_used = if alpha == 1 {
        let play = complete_graph_play(g.n(), d, e);
        rep.lower = base + lower_coef * play;
        rep.upper = base + upper_coef * play;
        rep.tag("welfare-max-complete-graph");
        rep.caveat("alpha = 1: exact complete-graph aggregate play used");
        play
    } else if unique_max_independent_set(g).is_some() {
        let play = e * alpha as f64;
        rep.lower = base + lower_coef * play;
        rep.upper = base + upper_coef * play;
        rep.tag("welfare-max-unique-mis");
        play
    } else {
        let top = e * ice_factor(alpha);
        rep.upper = base + upper_coef * top;
        rep.tag("welfare-max-upper");
        if sigma <= 1.0 / (1.0 + d_min * d) {
            rep.lower = base + lower_coef * top;
            rep.tag("welfare-max-lower-small-sigma");
        } else {
            rep.lower = base + lower_coef * e * alpha as f64;
            rep.tag("welfare-max-lower-large-sigma");
        }
        top
    };
    rep.alternate("welfare-max-upper-tangent", base + tangent_coef * play_used);
    rep.caveat(TANGENT_CAVEAT);

    if g.is_regular() {
        match max_aggregate_play(g, cfg, cap) {
            Ok(best) => {
                let limit = base + c * d_max * d * best.value;
                rep.alternate("welfare-regular-limit", limit);
                rep.alternate(
                    "welfare-regular-limit-extra-e-star",
                    base + c * d_max * d * e * best.value,
                );
                rep.tag("welfare-regular-limit");
                rep.caveat("regular-graph limit as sigma_b -> 1 uses c d delta sum(x*) with x* in effort units; the variant with an extra e* factor is reported alongside");
            }
            Err(err) => rep.caveat(format!("regular-graph limit skipped: {err}")),
        }
    }
    Ok(rep)
}

/// Line network with `n` nodes.
pub fn line_bounds(n: usize, delta: f64, e_star: f64) -> Result<BoundsReport> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "line needs at least one node".into(),
        ));
    }
    let applicable = delta >= 0.5 || n == 1;
    let mut rep = BoundsReport::open(Quantity::AggregatePlay, "delta >= 1/2", applicable);
    rep.tag("aggregate-line");
    if !applicable {
        rep.caveat(format!("delta = {delta} < 1/2: bound does not apply"));
        return Ok(rep);
    }
    let nf = n as f64;
    rep.lower = nf / 2.0 * e_star;
    rep.upper = (nf + 1.0) / 2.0 * e_star;
    if n % 2 == 1 {
        rep.exact = Some(rep.upper);
        rep.tag("aggregate-line-odd-exact");
    }
    Ok(rep)
}

/// The unique equilibrium of a star with `n_peripherals` leaves (center 0).
pub fn star_equilibrium(
    n_peripherals: usize,
    cfg: &GameConfig,
) -> Result<(EffortProfile, BoundsReport)> {
    if n_peripherals < 3 {
        return Err(Error::InvalidArgument(format!(
            "star needs at least 3 peripherals, got {n_peripherals}"
        )));
    }
    let np = n_peripherals as f64;
    if cfg.delta * np < 1.0 - cfg.tol {
        return Err(Error::DeltaOutOfRange(cfg.delta));
    }
    let mut x = vec![cfg.e_star; n_peripherals + 1];
    x[0] = 0.0;
    let mut rep = BoundsReport::open(Quantity::AggregatePlay, "delta >= 1/n_peripherals", true);
    let total = np * cfg.e_star;
    rep.lower = total;
    rep.upper = total;
    rep.exact = Some(total);
    rep.tag("aggregate-star");
    if cfg.delta >= 1.0 {
        rep.caveat(
            "at delta = 1 the center alone is a second equilibrium; uniqueness needs delta < 1",
        );
    }
    Ok((EffortProfile::new(x), rep))
}

fn class_error(expected: &str, t: &TreeStructure) -> Error {
    Error::WrongGraphClass {
        expected: expected.to_string(),
        found: t.kind.to_string(),
    }
}

fn tree_report(t: &TreeStructure, n: usize, delta: f64, e_star: f64, tag: &str) -> BoundsReport {
    let applicable = delta >= 0.5;
    let mut rep = BoundsReport::open(
        Quantity::AggregatePlay,
        "delta >= 1/2 and G is a tree",
        applicable,
    );
    rep.tag(tag);
    if !applicable {
        rep.caveat(format!("delta = {delta} < 1/2: bound does not apply"));
        return rep;
    }
    let (nf, cf) = (n as f64, t.centers.len() as f64);
    rep.lower = (nf + t.r as f64 - cf) / 2.0 * e_star;
    rep.upper = (nf + t.m as f64 - cf) / 2.0 * e_star;
    if t.all_branches_odd() {
        rep.exact = Some(rep.upper);
        rep.tag(&format!("{tag}-all-odd-exact"));
    }
    rep
}

/// One center with `m ≥ 3` chains.
pub fn starlike_bounds(g: &Graph, delta: f64, e_star: f64) -> Result<BoundsReport> {
    let t = tree_structure(g);
    if !matches!(t.kind, TreeKind::Starlike | TreeKind::Star) {
        return Err(class_error("starlike", &t));
    }
    Ok(tree_report(&t, g.n(), delta, e_star, "aggregate-starlike"))
}

/// Any tree, dispatched by class: line, star or starlike, general.
pub fn tree_bounds(g: &Graph, delta: f64, e_star: f64) -> Result<BoundsReport> {
    let t = tree_structure(g);
    match t.kind {
        TreeKind::NotATree => Err(class_error("tree", &t)),
        TreeKind::Line => line_bounds(g.n(), delta, e_star),
        TreeKind::Star | TreeKind::Starlike => starlike_bounds(g, delta, e_star),
        TreeKind::GeneralTree => {
            let mut rep = tree_report(&t, g.n(), delta, e_star, "aggregate-tree");
            if rep.applicable && t.m != t.m_listed {
                let listed = (g.n() as f64 + t.m_listed as f64 - t.centers.len() as f64) / 2.0;
                rep.alternate("aggregate-tree-upper-listed-branches", listed * e_star);
                rep.caveat(format!(
                    "branch count m = {} includes {} center-to-center adjacencies; without them m = {}",
                    t.m,
                    t.m - t.m_listed,
                    t.m_listed
                ));
            }
            Ok(rep)
        }
    }
}

/// Welfare bounds for trees with at least one center.
pub fn tree_welfare_bounds(
    g: &Graph,
    cfg: &GameConfig,
    spec: &BenefitSpec,
) -> Result<BoundsReport> {
    let t = tree_structure(g);
    if !matches!(
        t.kind,
        TreeKind::Star | TreeKind::Starlike | TreeKind::GeneralTree
    ) {
        return Err(class_error("tree with a center", &t));
    }
    let sigma = checked_sigma(g, cfg, spec)?;
    let d = cfg.delta;
    let mut rep = BoundsReport::open(
        Quantity::Welfare,
        "delta >= 1/2 and G is a tree with a center",
        d >= 0.5,
    );
    if !rep.applicable {
        rep.caveat(format!("delta = {d} < 1/2: bound does not apply"));
        return Ok(rep);
    }
    let base = welfare_base(g.n(), cfg, spec);
    let (nf, cf) = (g.n() as f64, t.centers.len() as f64);
    let upper_play = (nf + t.m as f64 - cf) / 2.0 * cfg.e_star;
    let lower_play = (nf + t.r as f64 - cf) / 2.0 * cfg.e_star;
    let c = cfg.cost;
    let d_max = g.max_degree() as f64;
    let lower_coef = c * ((d + 1.0) * sigma - 1.0);
    rep.upper = base + c * d_max * d * sigma * upper_play;
    rep.tag("welfare-tree-upper");
    let threshold = 1.0 / (1.0 + d);
    let small = base + lower_coef * upper_play;
    let large = base + lower_coef * lower_play;
    rep.lower = if sigma < threshold {
        rep.tag("welfare-tree-lower-small-sigma");
        small
    } else if sigma > threshold {
        rep.tag("welfare-tree-lower-large-sigma");
        large
    } else {
        rep.tag("welfare-tree-lower-small-sigma");
        rep.tag("welfare-tree-lower-large-sigma");
        small.max(large)
    };
    rep.alternate(
        "welfare-tree-upper-tangent",
        base + c * d_max * d * upper_play,
    );
    rep.caveat(TANGENT_CAVEAT);
    Ok(rep)
}

/// Weighted limit welfare of the influential specialized equilibrium.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfluentialLimit {
    /// `A w`: each node's weight is the sum of its neighbours' weights.
    pub propagated_weights: Vec<f64>,
    pub alpha_aw: f64,
    pub witness: NodeSet,
    /// `n (b(e*) − c e*) + c e* α_{Aw}`.
    pub limit_welfare: f64,
    /// `Σ_i w_i (b(e*) − c e*) + c e* α_{Aw}`, the weighted-welfare limit.
    pub weighted_limit_welfare: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Delta1Report {
    pub weights: Vec<f64>,
    pub alpha_w: f64,
    pub witness: NodeSet,
    /// `e* α_w`, the largest weighted effort over equilibria at δ = 1.
    pub max_weighted_effort: f64,
    pub witness_profile: EffortProfile,
    pub influential: Option<InfluentialLimit>,
    pub theorem_tags: Vec<String>,
    pub caveats: Vec<String>,
}

fn resolve_weights(g: &Graph, w: Option<&[f64]>) -> Vec<f64> {
    w.map(<[f64]>::to_vec).unwrap_or_else(|| vec![1.0; g.n()])
}

/// Limit of the maximum weighted welfare at δ = 1 as the concavity tends to 1.
pub fn influential_limit(
    g: &Graph,
    w: Option<&[f64]>,
    cfg: &GameConfig,
    spec: &BenefitSpec,
) -> Result<InfluentialLimit> {
    if let Some(v) = g.isolated_node() {
        return Err(Error::IsolatedNode(v));
    }
    let w = resolve_weights(g, w);
    if w.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: w.len(),
        });
    }
    let propagated: Vec<f64> = (0..g.n())
        .map(|i| g.neighbors(i).iter().map(|&j| w[j]).sum())
        .collect();
    let (alpha_aw, witness) = weighted_max_independent_set(g, &propagated)?;
    let per_node = spec.value(cfg.e_star) - cfg.cost * cfg.e_star;
    let tail = cfg.cost * cfg.e_star * alpha_aw;
    Ok(InfluentialLimit {
        limit_welfare: g.n() as f64 * per_node + tail,
        weighted_limit_welfare: w.iter().sum::<f64>() * per_node + tail,
        propagated_weights: propagated,
        alpha_aw,
        witness,
    })
}

/// Results for perfect substitutes (δ = 1) with optional node weights.
pub fn delta1_results(
    g: &Graph,
    w: Option<&[f64]>,
    cfg: &GameConfig,
    spec: &BenefitSpec,
) -> Result<Delta1Report> {
    let weights = resolve_weights(g, w);
    let (alpha_w, witness) = weighted_max_independent_set(g, &weights)?;
    let mut x = vec![0.0; g.n()];
    for i in witness.iter() {
        x[i] = cfg.e_star;
    }
    let witness_profile = EffortProfile::new(x);
    let mut caveats = Vec::new();
    if cfg.delta != 1.0 {
        caveats.push(format!(
            "evaluated at delta = 1 (configured delta = {})",
            cfg.delta
        ));
    }
    debug_assert!(is_nash(g, &cfg.with_delta(1.0)?, &witness_profile));
    let mut theorem_tags = vec!["delta1-max-weighted-effort".to_string()];
    let influential = match influential_limit(g, Some(&weights), cfg, spec) {
        Ok(limit) => {
            theorem_tags.push("delta1-influential-limit".to_string());
            if weights.iter().any(|&v| v != 1.0) {
                caveats.push("with non-unit weights the limit's first term is sum_i w_i (b(e*) - c e*); see weighted_limit_welfare".into());
            }
            Some(limit)
        }
        Err(Error::IsolatedNode(v)) => {
            caveats.push(format!(
                "node {v} is isolated; influential limit not defined"
            ));
            None
        }
        Err(e) => return Err(e),
    };
    Ok(Delta1Report {
        max_weighted_effort: cfg.e_star * alpha_w,
        weights,
        alpha_w,
        witness,
        witness_profile,
        influential,
        theorem_tags,
        caveats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{enumerate_equilibria, make_benefit, welfare};

    fn cfg(delta: f64) -> GameConfig {
        GameConfig::new(delta, 1.0, 1.0, 1e-9).unwrap()
    }

    fn two_center_tree() -> Graph {
        Graph::from_edges(7, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6)]).unwrap()
    }

    #[test]
    fn eta_values() {
        assert!((eta(&Graph::path(7)) - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        assert!((eta(&Graph::complete(4)) - (1.0 + 13f64.sqrt()) / 6.0).abs() < 1e-15);
        assert_eq!(eta(&Graph::empty(5)), 0.0);
    }

    #[test]
    fn aggregate_examples() {
        let r = aggregate_bounds(&Graph::path(6), 0.8, 1.0).unwrap();
        assert_eq!((r.lower, r.upper), (3.0, 3.0 + 1.0 + 0.5));
        let r = aggregate_bounds(&Graph::path(7), 0.8, 1.0).unwrap();
        assert_eq!(r.upper, 16.0 / 3.0);
        assert_eq!(r.exact, Some(4.0));
        let r = aggregate_bounds(&two_center_tree(), 0.8, 2.0).unwrap();
        assert_eq!(r.exact, Some(10.0));
        let r = aggregate_bounds(&Graph::complete(4), 0.8, 1.0).unwrap();
        assert!((r.exact.unwrap() - 4.0 / 3.4).abs() < 1e-15);
        let r = aggregate_bounds(&Graph::path(7), 0.55, 1.0).unwrap();
        assert_eq!(r.upper, f64::INFINITY);
        assert_eq!(r.caveats.len(), 1);
        assert!(aggregate_bounds(&Graph::path(7), 1.0, 1.0).is_err());
    }

    #[test]
    fn stated_profile_upper_fails_on_full_support() {
        // K4 at delta = 0.8: every node receives exactly e*, so
        // W = n b(e*) - c sum(x), above the sigma_b-scaled bound.
        let k4 = Graph::complete(4);
        let c = cfg(0.8);
        let spec = make_benefit(&c, 4, 0.5, 1.0).unwrap();
        let x = EffortProfile::new(vec![1.0 / 3.4; 4]);
        let w = welfare(&k4, &c, &spec, &x);
        let r = welfare_profile_bounds(&k4, &c, &spec, &x).unwrap();
        assert!(w > r.upper + 1e-3);
        assert!(w >= r.lower);
        assert!(w <= r.alternate_value("welfare-profile-upper-tangent").unwrap() + 1e-12);
    }

    #[test]
    fn profile_bounds_reject_non_equilibria() {
        let k4 = Graph::complete(4);
        let c = cfg(0.8);
        let spec = make_benefit(&c, 4, 0.5, 1.0).unwrap();
        let x = EffortProfile::new(vec![1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            welfare_profile_bounds(&k4, &c, &spec, &x),
            Err(Error::NotEquilibrium { .. })
        ));
    }

    #[test]
    fn unique_mis_welfare_gap() {
        let g = two_center_tree();
        let c = cfg(0.8);
        let spec = make_benefit(&c, 7, 0.6, 1.0).unwrap();
        let r = max_welfare_bounds(&g, &c, &spec, 20).unwrap();
        let s = sigma_b(&spec, 7, 0.8).unwrap();
        let expected = 1.0 * 5.0 * (3.0 * 0.8 * s - (0.8 + 1.0) * s + 1.0);
        assert!((r.upper - r.lower - expected).abs() < 1e-12);
    }

    #[test]
    fn max_welfare_below_eta_is_open() {
        let c = cfg(0.55);
        let spec = make_benefit(&c, 7, 0.5, 1.0).unwrap();
        let r = max_welfare_bounds(&Graph::path(7), &c, &spec, 20).unwrap();
        assert!(!r.applicable);
        assert_eq!((r.lower, r.upper), (f64::NEG_INFINITY, f64::INFINITY));
    }

    #[test]
    fn regular_limit_alternate() {
        let g = Graph::cycle(5);
        let c = cfg(0.9);
        let spec = make_benefit(&c, 5, 0.999, 1.0).unwrap();
        let r = max_welfare_bounds(&g, &c, &spec, 20).unwrap();
        let limit = r.alternate_value("welfare-regular-limit").unwrap();
        let best = enumerate_equilibria(&g, &c, 20)
            .unwrap()
            .iter()
            .map(|x| welfare(&g, &c, &spec, x))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((best - limit).abs() / limit < 1e-2);
    }

    #[test]
    fn line_cases() {
        let r = line_bounds(7, 0.8, 1.0).unwrap();
        assert_eq!((r.lower, r.upper, r.exact), (3.5, 4.0, Some(4.0)));
        assert_eq!(line_bounds(1, 0.8, 2.0).unwrap().exact, Some(2.0));
        assert!(line_bounds(6, 0.8, 1.0).unwrap().exact.is_none());
        assert!(!line_bounds(6, 0.3, 1.0).unwrap().applicable);
    }

    #[test]
    fn star_cases() {
        let (x, r) = star_equilibrium(3, &cfg(0.5)).unwrap();
        assert_eq!(x.as_slice(), &[0.0, 1.0, 1.0, 1.0]);
        assert_eq!(r.exact, Some(3.0));
        assert_eq!(star_equilibrium(5, &cfg(0.25)).unwrap().1.exact, Some(5.0));
        assert!(star_equilibrium(5, &cfg(0.1)).is_err());
        assert!(star_equilibrium(2, &cfg(0.9)).is_err());
        assert_eq!(star_equilibrium(3, &cfg(1.0)).unwrap().1.caveats.len(), 1);
    }

    #[test]
    fn starlike_and_tree_dispatch() {
        let spider =
            Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).unwrap();
        let r = starlike_bounds(&spider, 0.75, 1.0).unwrap();
        assert_eq!((r.lower, r.upper), (3.0, 4.5));
        assert_eq!(
            starlike_bounds(&Graph::star(3), 0.75, 1.0).unwrap().exact,
            Some(3.0)
        );
        assert!(starlike_bounds(&Graph::path(4), 0.75, 1.0).is_err());
        let r = tree_bounds(&two_center_tree(), 0.8, 1.0).unwrap();
        assert_eq!(r.upper, 5.0);
        assert_eq!(r.exact, Some(5.0));
        assert_eq!(tree_bounds(&Graph::path(7), 0.8, 1.0).unwrap().upper, 4.0);
        assert!(tree_bounds(&Graph::cycle(4), 0.8, 1.0).is_err());
    }

    #[test]
    fn tree_welfare_split() {
        let g = two_center_tree();
        let c = cfg(0.8);
        let at = |s| {
            let spec = make_benefit(&c, 7, s, 1.0).unwrap();
            tree_welfare_bounds(&g, &c, &spec).unwrap()
        };
        assert!(at(0.3)
            .theorem_tags
            .contains(&"welfare-tree-lower-small-sigma".to_string()));
        assert!(at(0.9)
            .theorem_tags
            .contains(&"welfare-tree-lower-large-sigma".to_string()));
        assert!(
            tree_welfare_bounds(&Graph::path(5), &c, &make_benefit(&c, 5, 0.5, 1.0).unwrap())
                .is_err()
        );
    }

    #[test]
    fn delta_one_cases() {
        let c = cfg(1.0);
        let star = Graph::star(3);
        let spec = make_benefit(&c, 4, 0.5, 1.0).unwrap();
        let r = delta1_results(&star, None, &c, &spec).unwrap();
        assert_eq!(r.max_weighted_effort, 3.0);
        let inf = r.influential.unwrap();
        assert_eq!(inf.propagated_weights, vec![3.0, 1.0, 1.0, 1.0]);
        assert_eq!(inf.alpha_aw, 3.0);
        let p3 = Graph::path(3);
        let spec = make_benefit(&c, 3, 0.5, 1.0).unwrap();
        let inf = delta1_results(&p3, None, &c, &spec)
            .unwrap()
            .influential
            .unwrap();
        assert_eq!(inf.propagated_weights, vec![1.0, 2.0, 1.0]);
        assert_eq!((inf.alpha_aw, inf.witness), (2.0, NodeSet::from([0, 2])));
        let lonely = Graph::from_edges(3, [(0, 1)]).unwrap();
        let r = delta1_results(&lonely, None, &c, &spec).unwrap();
        assert!(r.influential.is_none());
        assert!(matches!(
            influential_limit(&lonely, None, &c, &spec),
            Err(Error::IsolatedNode(2))
        ));
    }

    #[test]
    fn report_json_uses_strings_for_infinity() {
        let r = aggregate_bounds(&Graph::path(7), 0.55, 1.0).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"upper\":\"+inf\""));
        let back: BoundsReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
