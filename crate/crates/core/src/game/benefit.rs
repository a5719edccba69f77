//! Exponential-saturation benefit functions with a prescribed concavity.

use serde::{Deserialize, Serialize};

use super::{EffortProfile, GameConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `b(y) = b0 + (c/λ)(1 − exp(−λ(y − e*)))`.
///
/// `b(e*) = b0` and `b'(e*) = c` for every `λ > 0`; `λ` sets the curvature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenefitSpec {
    pub b0: f64,
    pub lambda: f64,
    pub e_star: f64,
    pub cost: f64,
}

impl BenefitSpec {
    pub fn value(&self, y: f64) -> f64 {
        self.b0 - self.cost / self.lambda * (-self.lambda * (y - self.e_star)).exp_m1()
    }

    pub fn derivative(&self, y: f64) -> f64 {
        self.cost * (-self.lambda * (y - self.e_star)).exp()
    }

    pub fn second_derivative(&self, y: f64) -> f64 {
        -self.lambda * self.derivative(y)
    }
}

/// `(1 − e^{−u})/u`, continuous at 0.
fn secant_ratio(u: f64) -> f64 {
    if u == 0.0 {
        1.0
    } else {
        -(-u).exp_m1() / u
    }
}

fn spread(n: usize, delta: f64, e_star: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "concavity needs at least two nodes, got {n}"
        )));
    }
    Ok(delta * (n - 1) as f64 * e_star)
}

/// Benefit whose normalized secant slope over `[e*, e* + δ(n−1)e*]` equals
/// `sigma_target`.
pub fn make_benefit(cfg: &GameConfig, n: usize, sigma_target: f64, b0: f64) -> Result<BenefitSpec> {
    if !(sigma_target > 0.0 && sigma_target < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "sigma_b target {sigma_target} outside (0, 1)"
        )));
    }
    let width = spread(n, cfg.delta, cfg.e_star)?;
    // The ratio falls strictly from 1 to 0, and is below t at u = 1/t.
    let (mut lo, mut hi) = (0.0_f64, 1.0 / sigma_target);
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if secant_ratio(mid) > sigma_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(BenefitSpec {
        b0,
        lambda: 0.5 * (lo + hi) / width,
        e_star: cfg.e_star,
        cost: cfg.cost,
    })
}

/// Normalized secant slope `(b(e* + Δ) − b(e*)) / (cΔ)` with `Δ = δ(n−1)e*`.
pub fn sigma_b(spec: &BenefitSpec, n: usize, delta: f64) -> Result<f64> {
    let width = spread(n, delta, spec.e_star)?;
    Ok(secant_ratio(spec.lambda * width))
}

/// `Σ_i b(x_i + δ Σ_{j~i} x_j) − c Σ_i x_i`.
pub fn welfare(g: &Graph, cfg: &GameConfig, spec: &BenefitSpec, x: &EffortProfile) -> f64 {
    let x = x.as_slice();
    let benefit: f64 = (0..g.n()).map(|i| spec.value(cfg.received(g, x, i))).sum();
    benefit - cfg.cost * x.iter().sum::<f64>()
}
