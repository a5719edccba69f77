//! Public-goods game on a graph: best responses, equilibria, welfare.
//!
//! Node `i` enjoys `b(x_i + δ Σ_{j~i} x_j)` and pays `c x_i`. Equilibria are
//! the solutions of the complementarity problem in [`crate::lcp`] scaled by
//! `e*`, the effort at which `b' = c`.

mod benefit;

pub use benefit::{make_benefit, sigma_b, welfare, BenefitSpec};

use serde::{Deserialize, Serialize};

use crate::bounds::eta;
use crate::error::{Error, Result};
use crate::graph::{
    enumerate_maximal_independent_sets, independence_number, unique_max_independent_set, Graph,
    NodeSet,
};
use crate::lcp::{self, build_lcp, ics_decomposition, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    pub delta: f64,
    pub e_star: f64,
    pub cost: f64,
    pub tol: f64,
}

impl GameConfig {
    pub fn new(delta: f64, e_star: f64, cost: f64, tol: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::DeltaOutOfRange(delta));
        }
        for (name, v) in [("e_star", e_star), ("cost", cost), ("tol", tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(GameConfig {
            delta,
            e_star,
            cost,
            tol,
        })
    }

    /// Same parameters at another substitutability.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        GameConfig::new(delta, self.e_star, self.cost, self.tol)
    }

    /// Effort node `i` receives: `x_i + δ Σ_{j~i} x_j`.
    pub fn received(&self, g: &Graph, x: &[f64], i: usize) -> f64 {
        x[i] + self.delta * g.neighbors(i).iter().map(|&j| x[j]).sum::<f64>()
    }

    /// Tolerance on aggregate quantities in effort units.
    fn effort_tol(&self) -> f64 {
        10.0 * self.tol * self.e_star.max(1.0)
    }
}

/// Nonnegative effort per node, in effort units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EffortProfile(Vec<f64>);

impl EffortProfile {
    pub fn new(x: Vec<f64>) -> Self {
        EffortProfile(x)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Aggregate play `Σ x_i`.
    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn support(&self, tol: f64) -> NodeSet {
        (0..self.0.len()).filter(|&i| self.0[i] > tol).collect()
    }

    fn scaled(&self, factor: f64) -> Vec<f64> {
        self.0.iter().map(|v| v * factor).collect()
    }
}

impl From<Vec<f64>> for EffortProfile {
    fn from(x: Vec<f64>) -> Self {
        EffortProfile(x)
    }
}

/// Profiles together with the configuration they belong to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSet {
    pub config: GameConfig,
    pub profiles: Vec<EffortProfile>,
}

/// `max(0, e* − δ Σ_{j~i} x_j)`.
pub fn best_response(g: &Graph, cfg: &GameConfig, x: &EffortProfile, i: usize) -> f64 {
    let others: f64 = g.neighbors(i).iter().map(|&j| x.0[j]).sum();
    (cfg.e_star - cfg.delta * others).max(0.0)
}

/// Verification report for `x / e*` against the complementarity problem.
pub fn nash_report(g: &Graph, cfg: &GameConfig, x: &EffortProfile) -> Result<VerifyReport> {
    let inst = build_lcp(g, cfg.delta)?;
    lcp::verify_solution(&inst, &x.scaled(1.0 / cfg.e_star), cfg.tol)
}

pub fn is_nash(g: &Graph, cfg: &GameConfig, x: &EffortProfile) -> bool {
    nash_report(g, cfg, x).map(|r| r.ok).unwrap_or(false)
}

/// All equilibria in canonical order.
pub fn enumerate_equilibria(g: &Graph, cfg: &GameConfig, cap: usize) -> Result<Vec<EffortProfile>> {
    let inst = build_lcp(g, cfg.delta)?;
    Ok(lcp::enumerate_solutions(&inst, cfg.tol, cap)?
        .into_iter()
        .map(|s| EffortProfile(s.x.iter().map(|v| v * cfg.e_star).collect()))
        .collect())
}

/// Independent clique equilibrium built around a maximum independent set.
pub fn construct_ice(g: &Graph, cfg: &GameConfig, mis: &NodeSet) -> Result<Option<EffortProfile>> {
    Ok(lcp::construct_ics(g, cfg.delta, mis, cfg.tol)?
        .map(|ics| EffortProfile(ics.x.iter().map(|v| v * cfg.e_star).collect())))
}

/// Maximum aggregate play over all equilibria, with structural checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxAggregate {
    pub value: f64,
    /// Every equilibrium within tolerance of the maximum.
    pub argmax: Vec<EffortProfile>,
    pub alpha: usize,
    pub eta: f64,
    /// Cliques of an argmax that is an independent clique equilibrium with
    /// α cliques, if any.
    pub ice_cliques: Option<Vec<NodeSet>>,
    /// The maximum independent set, when it is unique.
    pub unique_mis: Option<NodeSet>,
    /// Expected structure that was not found. Empty when all checks pass.
    pub diagnostics: Vec<String>,
}

pub fn max_aggregate_play(g: &Graph, cfg: &GameConfig, cap: usize) -> Result<MaxAggregate> {
    let equilibria = enumerate_equilibria(g, cfg, cap)?;
    let value = equilibria
        .iter()
        .map(EffortProfile::total)
        .fold(f64::NEG_INFINITY, f64::max);
    let argmax: Vec<EffortProfile> = equilibria
        .into_iter()
        .filter(|x| x.total() >= value - cfg.effort_tol())
        .collect();
    let (alpha, _) = independence_number(g);
    let eta = eta(g);
    let ice_cliques = argmax.iter().find_map(|x| {
        ics_decomposition(g, &x.scaled(1.0 / cfg.e_star), cfg.delta, cfg.tol)
            .filter(|c| c.len() == alpha)
    });
    let unique_mis = unique_max_independent_set(g);

    let mut diagnostics = Vec::new();
    if cfg.delta >= eta {
        if ice_cliques.is_none() {
            diagnostics.push(format!(
                "delta {} >= eta {eta}: no maximizer is an independent clique equilibrium with {alpha} cliques",
                cfg.delta
            ));
        }
        if let Some(s) = &unique_mis {
            let mut expected = vec![0.0; g.n()];
            for i in s.iter() {
                expected[i] = cfg.e_star;
            }
            let matches = argmax.len() == 1
                && argmax[0]
                    .0
                    .iter()
                    .zip(&expected)
                    .all(|(a, b)| (a - b).abs() <= cfg.effort_tol());
            if !matches {
                diagnostics.push(format!(
                    "unique maximum independent set {s}: maximizer is not e* on it"
                ));
            }
        }
    }
    for d in &diagnostics {
        log::warn!("{d}");
    }
    Ok(MaxAggregate {
        value,
        argmax,
        alpha,
        eta,
        ice_cliques,
        unique_mis,
        diagnostics,
    })
}

/// Profiles `e* 1_S` where every node outside `S` has at least ⌈1/δ⌉
/// neighbours in the independent set `S`.
pub fn specialized_equilibria(
    g: &Graph,
    cfg: &GameConfig,
    cap: usize,
) -> Result<Vec<EffortProfile>> {
    // Such sets are dominating, hence maximal independent.
    Ok(enumerate_maximal_independent_sets(g, cap)?
        .into_iter()
        .filter(|s| {
            let m = s.mask();
            (0..g.n())
                .filter(|&v| !s.contains(v))
                .all(|v| (g.adj_mask(v) & m).count_ones() as f64 * cfg.delta >= 1.0 - cfg.tol)
        })
        .map(|s| {
            let mut x = vec![0.0; g.n()];
            for i in s.iter() {
                x[i] = cfg.e_star;
            }
            EffortProfile(x)
        })
        .collect())
}
