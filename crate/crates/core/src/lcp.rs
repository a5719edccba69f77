//! The complementarity problem `x ≥ 0, (I + δA)x ≥ 1, xᵀ((I + δA)x − 1) = 0`
//! and its exact solution by support enumeration.

use log::{debug, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{check_cap, independence_number, max_clique_in, Graph, NodeSet};
use crate::linalg;

#[derive(Debug, Clone, Copy)]
pub struct LcpInstance<'a> {
    graph: &'a Graph,
    delta: f64,
}

/// Builds the instance for `M = I + δA`, `q = −1`.
pub fn build_lcp(g: &Graph, delta: f64) -> Result<LcpInstance<'_>> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::DeltaOutOfRange(delta));
    }
    Ok(LcpInstance { graph: g, delta })
}

impl<'a> LcpInstance<'a> {
    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Entry `(i, j)` of `I + δA`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            1.0
        } else if self.graph.is_adjacent(i, j) {
            self.delta
        } else {
            0.0
        }
    }

    /// `((I + δA)x)_i`.
    pub fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        x[i] + self.delta * self.graph.neighbors(i).iter().map(|&j| x[j]).sum::<f64>()
    }

    /// `(I + δA)x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n()).map(|i| self.row_dot(i, x)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LcpSolution {
    pub x: Vec<f64>,
    pub support: NodeSet,
}

impl LcpSolution {
    /// Wraps `x`, taking the support as `{i : x_i > tol}`.
    pub fn from_values(x: Vec<f64>, tol: f64) -> Self {
        let support = (0..x.len()).filter(|&i| x[i] > tol).collect();
        LcpSolution { x, support }
    }

    pub fn l1(&self) -> f64 {
        self.x.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `x_i < 0`.
    Negative,
    /// `((I + δA)x)_i < 1`.
    Infeasible,
    /// `x_i ((I + δA)x − 1)_i ≠ 0`.
    Complementarity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub node: usize,
    pub kind: ViolationKind,
    /// Size of the violation before subtracting the tolerance.
    pub amount: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub worst: Option<Violation>,
}

/// Checks `x` against the complementarity conditions and reports the
/// largest violation that exceeds `tol`.
pub fn verify_solution(inst: &LcpInstance, x: &[f64], tol: f64) -> Result<VerifyReport> {
    if x.len() != inst.n() {
        return Err(Error::DimensionMismatch {
            expected: inst.n(),
            found: x.len(),
        });
    }
    let mut worst: Option<Violation> = None;
    let mut note = |node, kind, amount: f64| {
        if amount > tol && worst.is_none_or(|w| amount > w.amount) {
            worst = Some(Violation { node, kind, amount });
        }
    };
    for (i, &xi) in x.iter().enumerate() {
        let slack = inst.row_dot(i, x) - 1.0;
        note(i, ViolationKind::Negative, -xi);
        note(i, ViolationKind::Infeasible, -slack);
        note(i, ViolationKind::Complementarity, (xi * slack).abs());
    }
    Ok(VerifyReport {
        ok: worst.is_none(),
        worst,
    })
}

/// Outcome of solving on one support, before any feasibility decision.
#[derive(Debug)]
enum SupportSolve {
    Solved(LcpSolution),
    Singular,
    Rejected,
}

fn solve_support_mask(inst: &LcpInstance, s: u64, tol: f64) -> SupportSolve {
    let n = inst.n();
    let members = NodeSet::from_mask(s);
    let k = members.len();
    let mut a = vec![0.0; k * k];
    for (r, i) in members.iter().enumerate() {
        for (c, j) in members.iter().enumerate() {
            a[r * k + c] = inst.entry(i, j);
        }
    }
    let mut b = vec![1.0; k];
    if linalg::solve(&mut a, &mut b).is_none() {
        return SupportSolve::Singular;
    }
    if b.iter().any(|&v| v < -tol || !v.is_finite()) {
        return SupportSolve::Rejected;
    }
    let mut x = vec![0.0; n];
    for (r, i) in members.iter().enumerate() {
        // Coordinates within tolerance of zero are degenerate; the realized
        // support drops them.
        x[i] = if b[r] > tol { b[r] } else { 0.0 };
    }
    if (0..n).any(|i| s & (1 << i) == 0 && inst.row_dot(i, &x) < 1.0 - tol) {
        return SupportSolve::Rejected;
    }
    if !verify_solution(inst, &x, tol)
        .map(|r| r.ok)
        .unwrap_or(false)
    {
        return SupportSolve::Rejected;
    }
    SupportSolve::Solved(LcpSolution::from_values(x, tol))
}

/// Solves `(I + δA)_SS x_S = 1` and returns the solution when it is
/// nonnegative and feasible off the support.
///
/// Coordinates of `x_S` within `tol` of zero are set to zero, so the returned
/// support may be a proper subset of `s`.
pub fn solve_on_support(inst: &LcpInstance, s: &NodeSet, tol: f64) -> Option<LcpSolution> {
    match solve_support_mask(inst, s.mask(), tol) {
        SupportSolve::Solved(sol) => Some(sol),
        SupportSolve::Singular => {
            debug!("singular system on support {s} at delta {}", inst.delta);
            None
        }
        SupportSolve::Rejected => None,
    }
}

/// Solutions of a full enumeration plus the supports skipped as singular.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub solutions: Vec<LcpSolution>,
    pub singular_supports: Vec<NodeSet>,
}

/// Every off-support node needs at least ⌈1/δ⌉ support neighbours, because
/// support values never exceed 1.
fn passes_domination_filter(adj: &[u64], full: u64, s: u64, delta: f64, tol: f64) -> bool {
    let mut outside = full & !s;
    while outside != 0 {
        let j = outside.trailing_zeros() as usize;
        outside &= outside - 1;
        if ((adj[j] & s).count_ones() as f64) * delta < 1.0 - tol {
            return false;
        }
    }
    true
}

/// Enumerates every solution, recording singular supports.
pub fn enumerate_with_diagnostics(inst: &LcpInstance, tol: f64, cap: usize) -> Result<Enumeration> {
    let n = inst.n();
    check_cap(n, cap)?;
    let adj = inst.graph.adj_masks();
    let full = inst.graph.full_mask();
    let outcomes: Vec<(u64, SupportSolve)> = (0..=full)
        .into_par_iter()
        .filter(|&s| passes_domination_filter(adj, full, s, inst.delta, tol))
        .filter_map(|s| match solve_support_mask(inst, s, tol) {
            SupportSolve::Rejected => None,
            outcome => Some((s, outcome)),
        })
        .collect();

    let mut solutions = Vec::new();
    let mut singular_supports = Vec::new();
    for (s, outcome) in outcomes {
        match outcome {
            SupportSolve::Solved(sol) => solutions.push(sol),
            SupportSolve::Singular => singular_supports.push(NodeSet::from_mask(s)),
            SupportSolve::Rejected => {}
        }
    }
    if !singular_supports.is_empty() {
        debug!(
            "{} singular supports skipped at delta {}",
            singular_supports.len(),
            inst.delta
        );
    }
    singular_supports.sort();
    Ok(Enumeration {
        solutions: canonicalize(solutions, tol),
        singular_supports,
    })
}

/// All solutions, deduplicated and in canonical order.
pub fn enumerate_solutions(inst: &LcpInstance, tol: f64, cap: usize) -> Result<Vec<LcpSolution>> {
    Ok(enumerate_with_diagnostics(inst, tol, cap)?.solutions)
}

fn cmp_values(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Sorts by support then values and drops near-duplicates with equal support.
fn canonicalize(mut sols: Vec<LcpSolution>, tol: f64) -> Vec<LcpSolution> {
    sols.sort_by(|a, b| {
        a.support
            .cmp(&b.support)
            .then_with(|| cmp_values(&a.x, &b.x))
    });
    let mut out: Vec<LcpSolution> = Vec::with_capacity(sols.len());
    for sol in sols {
        let dup = out
            .iter()
            .rev()
            .take_while(|o| o.support == sol.support)
            .any(|o| max_abs_diff(&o.x, &sol.x) <= 10.0 * tol);
        if !dup {
            out.push(sol);
        }
    }
    out
}

/// Drops a zero coordinate: returns `G − i` and `x` without entry `i`,
/// checked to solve the smaller problem.
pub fn restrict_solution(
    inst: &LcpInstance,
    x: &[f64],
    i: usize,
    tol: f64,
) -> Result<(Graph, Vec<f64>)> {
    let g = inst.graph;
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: x.len(),
        });
    }
    if i >= g.n() {
        return Err(Error::InvalidArgument(format!("node {i} out of range")));
    }
    if x[i] > tol {
        return Err(Error::PositiveCoordinate {
            node: i,
            value: x[i],
        });
    }
    let (sub, map) = g.without_node(i);
    let y: Vec<f64> = map.iter().map(|&old| x[old]).collect();
    let report = verify_solution(&build_lcp(&sub, inst.delta)?, &y, tol)?;
    if let Some(v) = report.worst {
        return Err(Error::NotEquilibrium {
            node: map[v.node],
            amount: v.amount,
        });
    }
    Ok((sub, y))
}

/// A solution supported on pairwise independent cliques.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IcsSolution {
    pub cliques: Vec<NodeSet>,
    pub x: Vec<f64>,
}

impl IcsSolution {
    pub fn support(&self) -> NodeSet {
        self.cliques.iter().flat_map(|c| c.iter()).collect()
    }

    pub fn l1(&self) -> f64 {
        self.x.iter().sum()
    }
}

/// Value `1/(1 + (k − 1)δ)` taken on a clique of size `k`.
pub fn clique_value(k: usize, delta: f64) -> f64 {
    1.0 / (1.0 + (k as f64 - 1.0) * delta)
}

/// Closed-form vector for a family of cliques.
pub fn ics_vector(n: usize, cliques: &[NodeSet], delta: f64) -> Vec<f64> {
    let mut x = vec![0.0; n];
    for c in cliques {
        let v = clique_value(c.len(), delta);
        for i in c.iter() {
            x[i] = v;
        }
    }
    x
}

fn cliques_independent(g: &Graph, cliques: &[NodeSet]) -> bool {
    cliques.iter().all(|c| g.is_clique(c))
        && cliques.iter().enumerate().all(|(a, ca)| {
            let union: u64 = ca.iter().fold(0, |m, v| m | g.adj_mask(v));
            cliques[a + 1..].iter().all(|cb| union & cb.mask() == 0)
        })
}

/// Splits the support of `x` into the cliques of an ICS if `x` has that form:
/// every support component is a clique carrying the closed-form value.
pub fn ics_decomposition(g: &Graph, x: &[f64], delta: f64, tol: f64) -> Option<Vec<NodeSet>> {
    let support: NodeSet = (0..x.len()).filter(|&i| x[i] > tol).collect();
    let (sub, map) = g.induced_subgraph(&support);
    let mut cliques = Vec::new();
    for (comp, cmap) in sub.connected_components() {
        if comp.edge_count() != comp.n() * (comp.n() - 1) / 2 {
            return None;
        }
        let clique: NodeSet = cmap.iter().map(|&v| map[v]).collect();
        let target = clique_value(clique.len(), delta);
        if clique.iter().any(|i| (x[i] - target).abs() > 10.0 * tol) {
            return None;
        }
        cliques.push(clique);
    }
    cliques.sort();
    Some(cliques)
}

/// Upper limit on clique-choice combinations tried by the fallback search.
const FALLBACK_LIMIT: usize = 100_000;

/// Builds an ICS around a maximum independent set.
///
/// Each member `i` of `mis` starts with the largest (then lexicographically
/// smallest) clique through `i` inside `i` and its private neighbours. While
/// the closed-form vector fails verification, cliques shrink: an overloaded
/// support node is dropped first (highest index), otherwise the worst
/// under-served node gets help by dropping a clique member it cannot see. If
/// shrinking gets stuck, all clique choices are tried in order of decreasing
/// ℓ1 norm, up to a fixed budget.
pub fn construct_ics(
    g: &Graph,
    delta: f64,
    mis: &NodeSet,
    tol: f64,
) -> Result<Option<IcsSolution>> {
    let inst = build_lcp(g, delta)?;
    if mis.iter().any(|v| v >= g.n()) {
        return Err(Error::InvalidArgument(format!(
            "node set {mis} out of range"
        )));
    }
    if !g.is_independent(mis) {
        return Err(Error::NotIndependent);
    }
    let (alpha, _) = independence_number(g);
    if mis.len() != alpha {
        return Err(Error::NotMaximum {
            size: mis.len(),
            alpha,
        });
    }

    let mis_mask = mis.mask();
    let candidates: Vec<u64> = mis
        .iter()
        .map(|i| {
            g.neighbors(i)
                .iter()
                .filter(|&&j| g.adj_mask(j) & mis_mask == 1 << i)
                .fold(1u64 << i, |m, &j| m | 1 << j)
        })
        .collect();
    let adj = g.adj_masks();
    let mut cliques: Vec<NodeSet> = mis
        .iter()
        .zip(&candidates)
        .map(|(i, &cand)| {
            let (_, rest) = max_clique_in(adj, cand & adj[i]);
            NodeSet::from_mask(rest | 1 << i)
        })
        .collect();

    loop {
        let x = ics_vector(g.n(), &cliques, delta);
        let report = verify_solution(&inst, &x, tol)?;
        if report.ok && cliques_independent(g, &cliques) {
            return Ok(Some(IcsSolution { cliques, x }));
        }
        if !shrink(&inst, &mut cliques, mis, &x, tol) {
            break;
        }
    }
    debug!("clique shrinking stalled for {mis}; trying exhaustive clique choices");
    Ok(fallback_search(&inst, mis, &candidates, tol))
}

fn shrink(inst: &LcpInstance, cliques: &mut [NodeSet], mis: &NodeSet, x: &[f64], tol: f64) -> bool {
    let g = inst.graph;
    let overloaded = (0..g.n())
        .rev()
        .find(|&i| x[i] > tol && !mis.contains(i) && inst.row_dot(i, x) - 1.0 > tol);
    if let Some(v) = overloaded {
        for c in cliques.iter_mut() {
            if c.contains(v) {
                *c = c.iter().filter(|&u| u != v).collect();
                return true;
            }
        }
    }
    let worst = (0..g.n())
        .filter(|&k| x[k] <= tol)
        .map(|k| (k, 1.0 - inst.row_dot(k, x)))
        .filter(|&(_, deficit)| deficit > tol)
        .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)));
    let Some((k, _)) = worst else {
        return false;
    };
    let victim = cliques
        .iter()
        .enumerate()
        .filter(|(_, c)| c.iter().any(|u| g.is_adjacent(u, k)))
        .flat_map(|(ci, c)| {
            c.iter()
                .filter(|&u| !mis.contains(u) && !g.is_adjacent(u, k))
                .map(move |u| (ci, u))
        })
        .max_by_key(|&(_, u)| u);
    match victim {
        Some((ci, u)) => {
            cliques[ci] = cliques[ci].iter().filter(|&w| w != u).collect();
            true
        }
        None => false,
    }
}

/// All cliques through `i` inside `cand`.
fn cliques_through(adj: &[u64], i: usize, cand: u64) -> Vec<u64> {
    fn grow(adj: &[u64], chosen: u64, rest: u64, out: &mut Vec<u64>) {
        out.push(chosen);
        let mut r = rest;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            // Only extend with higher-numbered nodes to avoid repeats.
            grow(adj, chosen | 1 << v, r & adj[v], out);
        }
    }
    let mut out = Vec::new();
    grow(adj, 1 << i, cand & adj[i] & !(1u64 << i), &mut out);
    out
}

fn fallback_search(
    inst: &LcpInstance,
    mis: &NodeSet,
    candidates: &[u64],
    tol: f64,
) -> Option<IcsSolution> {
    let g = inst.graph;
    let options: Vec<Vec<u64>> = mis
        .iter()
        .zip(candidates)
        .map(|(i, &cand)| cliques_through(g.adj_masks(), i, cand))
        .collect();
    let total = options
        .iter()
        .try_fold(1usize, |acc, o| acc.checked_mul(o.len()))
        .filter(|&t| t <= FALLBACK_LIMIT);
    let Some(total) = total else {
        warn!("clique choice space for {mis} exceeds {FALLBACK_LIMIT}; giving up");
        return None;
    };
    let mut combos: Vec<(f64, Vec<NodeSet>)> = (0..total)
        .map(|mut code| {
            let cliques: Vec<NodeSet> = options
                .iter()
                .map(|o| {
                    let pick = o[code % o.len()];
                    code /= o.len();
                    NodeSet::from_mask(pick)
                })
                .collect();
            let l1 = cliques
                .iter()
                .map(|c| c.len() as f64 * clique_value(c.len(), inst.delta))
                .sum();
            (l1, cliques)
        })
        .collect();
    combos.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    combos.into_iter().find_map(|(_, cliques)| {
        let x = ics_vector(g.n(), &cliques, inst.delta);
        let ok = verify_solution(inst, &x, tol).ok()?.ok && cliques_independent(g, &cliques);
        ok.then_some(IcsSolution { cliques, x })
    })
}

/// One solution in the serialized form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub support: NodeSet,
    pub x: Vec<f64>,
    pub l1: f64,
}

/// Serialized enumeration output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub delta: f64,
    pub tol: f64,
    pub solutions: Vec<SolutionRecord>,
}

impl SolutionSet {
    pub fn new(delta: f64, tol: f64, sols: &[LcpSolution]) -> Self {
        SolutionSet {
            delta,
            tol,
            solutions: sols
                .iter()
                .map(|s| SolutionRecord {
                    support: s.support.clone(),
                    x: s.x.clone(),
                    l1: s.l1(),
                })
                .collect(),
        }
    }
}
