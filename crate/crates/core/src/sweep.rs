//! Equilibrium supports tracked over a uniform δ grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{enumerate_equilibria, GameConfig};
use crate::graph::{check_cap, Graph, NodeSet};

/// Default limit on `steps · 2^n` support evaluations.
pub const DEFAULT_BUDGET: u128 = 1 << 30;

/// Grid points `[lo, hi]` over which a support pattern is an equilibrium,
/// with the aggregate play at both ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityInterval {
    pub lo: f64,
    pub hi: f64,
    pub play_lo: f64,
    pub play_hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub support: NodeSet,
    pub intervals: Vec<ValidityInterval>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub delta_min: f64,
    pub delta_max: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let SweepSpec {
            delta_min: lo,
            delta_max: hi,
            steps,
        } = *self;
        if !(lo > 0.0 && hi <= 1.0 && lo < hi) {
            return Err(Error::InvalidArgument(format!(
                "sweep range must satisfy 0 < delta-min < delta-max <= 1, got [{lo}, {hi}]"
            )));
        }
        if steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "steps must be at least 2, got {steps}"
            )));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let width = self.delta_max - self.delta_min;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.delta_max
                } else {
                    self.delta_min + width * k as f64 / last
                }
            })
            .collect()
    }
}

/// Enumerates equilibria at every grid point and groups them by support.
///
/// Interval ends are grid points, so they are accurate to one grid step.
pub fn run_sweep(
    g: &Graph,
    base: &GameConfig,
    spec: &SweepSpec,
    cap: usize,
    budget: u128,
) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    check_cap(g.n(), cap)?;
    let required = (spec.steps as u128) << g.n();
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let grid = spec.grid();
    let per_point: Vec<Vec<(NodeSet, f64)>> = grid
        .par_iter()
        .map(|&d| {
            let cfg = base.with_delta(d)?;
            Ok(enumerate_equilibria(g, &cfg, cap)?
                .into_iter()
                .map(|x| (x.support(cfg.tol * cfg.e_star), x.total()))
                .collect())
        })
        .collect::<Result<_>>()?;

    let mut patterns: Vec<NodeSet> = per_point.iter().flatten().map(|(s, _)| s.clone()).collect();
    patterns.sort();
    patterns.dedup();
    Ok(patterns
        .into_iter()
        .map(|support| {
            let mut intervals: Vec<ValidityInterval> = Vec::new();
            let mut open = false;
            for (k, found) in per_point.iter().enumerate() {
                match found.iter().find(|(s, _)| *s == support) {
                    Some(&(_, play)) => {
                        if open {
                            let last = intervals.last_mut().unwrap();
                            last.hi = grid[k];
                            last.play_hi = play;
                        } else {
                            intervals.push(ValidityInterval {
                                lo: grid[k],
                                hi: grid[k],
                                play_lo: play,
                                play_hi: play,
                            });
                            open = true;
                        }
                    }
                    None => open = false,
                }
            }
            SweepRow { support, intervals }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> GameConfig {
        GameConfig::new(1.0, 1.0, 1.0, 1e-9).unwrap()
    }

    #[test]
    fn grid_ends_exactly() {
        let s = SweepSpec {
            delta_min: 0.4,
            delta_max: 1.0,
            steps: 121,
        };
        let g = s.grid();
        assert_eq!((g[0], g[120]), (0.4, 1.0));
        assert!((g[1] - 0.405).abs() < 1e-15);
    }

    #[test]
    fn validation_and_budget() {
        let bad = SweepSpec {
            delta_min: 0.8,
            delta_max: 0.5,
            steps: 10,
        };
        assert!(bad.validate().is_err());
        let one = SweepSpec {
            delta_min: 0.5,
            delta_max: 0.8,
            steps: 1,
        };
        assert!(one.validate().is_err());
        let ok = SweepSpec {
            delta_min: 0.5,
            delta_max: 0.8,
            steps: 10,
        };
        assert!(matches!(
            run_sweep(&Graph::path(7), &base(), &ok, 20, 100),
            Err(Error::BudgetExceeded {
                required: 1280,
                budget: 100
            })
        ));
    }

    #[test]
    fn two_center_tree_switches_at_one_third() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6)]).unwrap();
        let spec = SweepSpec {
            delta_min: 0.1,
            delta_max: 0.9,
            steps: 81,
        };
        let rows = run_sweep(&g, &base(), &spec, 20, DEFAULT_BUDGET).unwrap();
        let specialized = rows
            .iter()
            .find(|r| r.support == NodeSet::from([0, 2, 3, 5, 6]))
            .unwrap();
        assert_eq!(specialized.intervals.len(), 1);
        assert!((specialized.intervals[0].lo - 1.0 / 3.0).abs() <= 0.01);
        assert_eq!(specialized.intervals[0].hi, 0.9);
        let full = rows.iter().find(|r| r.support.len() == 7).unwrap();
        assert_eq!(full.intervals[0].lo, 0.1);
        assert!((full.intervals[0].hi - 1.0 / 3.0).abs() <= 0.01);
    }
}
