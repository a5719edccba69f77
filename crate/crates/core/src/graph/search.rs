//! Exact independent-set and clique searches on bitmask adjacency.
//!
//! Every search branches on the lowest-numbered candidate and explores the
//! "include" branch first. Leaves are therefore reached in lexicographic order
//! of their sorted member lists, and keeping only strict improvements makes the
//! returned witness the lexicographically smallest optimum.

use super::{check_cap, Graph, NodeSet};
use crate::error::{Error, Result};

#[inline]
fn lowest(mask: u64) -> usize {
    mask.trailing_zeros() as usize
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Number of colour classes in a greedy colouring of `cand` where classes are
/// sets of pairwise non-adjacent nodes (w.r.t. `adj`). Upper-bounds the size of
/// any clique inside `cand`.
fn colour_bound(adj: &[u64], cand: u64) -> usize {
    let mut uncoloured = cand;
    let mut colours = 0;
    while uncoloured != 0 {
        colours += 1;
        let mut avail = uncoloured;
        while avail != 0 {
            let v = lowest(avail);
            avail &= !adj[v] & !bit(v);
            uncoloured &= !bit(v);
        }
    }
    colours
}

struct CliqueSearch<'a> {
    adj: &'a [u64],
    best_size: usize,
    best: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, chosen: u64, size: usize, cand: u64) {
        if cand == 0 {
            if size > self.best_size {
                self.best_size = size;
                self.best = chosen;
            }
            return;
        }
        if size + colour_bound(self.adj, cand) <= self.best_size {
            return;
        }
        let v = lowest(cand);
        self.expand(chosen | bit(v), size + 1, cand & self.adj[v]);
        self.expand(chosen, size, cand & !bit(v));
    }
}

/// Lexicographically smallest maximum clique inside `cand` for adjacency `adj`.
pub(crate) fn max_clique_in(adj: &[u64], cand: u64) -> (usize, u64) {
    let mut search = CliqueSearch {
        adj,
        best_size: 0,
        best: 0,
    };
    search.expand(0, 0, cand);
    (search.best_size, search.best)
}

/// Maximum clique of `g` (lexicographically smallest among the maxima).
pub fn max_clique(g: &Graph) -> NodeSet {
    NodeSet::from_mask(max_clique_in(g.adj_masks(), g.full_mask()).1)
}

/// Clique number ω(G).
pub fn clique_number(g: &Graph) -> usize {
    max_clique_in(g.adj_masks(), g.full_mask()).0
}

/// Independence number α(G) and the lexicographically smallest maximum
/// independent set.
pub fn independence_number(g: &Graph) -> (usize, NodeSet) {
    let comp = g.complement();
    let (alpha, mask) = max_clique_in(comp.adj_masks(), comp.full_mask());
    (alpha, NodeSet::from_mask(mask))
}

fn count_cliques_of_size(
    adj: &[u64],
    target: usize,
    size: usize,
    cand: u64,
    limit: usize,
    found: &mut usize,
) {
    if *found >= limit {
        return;
    }
    if size == target {
        *found += 1;
        return;
    }
    if cand == 0 || size + colour_bound(adj, cand) < target {
        return;
    }
    let v = lowest(cand);
    count_cliques_of_size(adj, target, size + 1, cand & adj[v], limit, found);
    count_cliques_of_size(adj, target, size, cand & !bit(v), limit, found);
}

/// Counts maximum independent sets, stopping once `limit` have been seen.
pub fn count_maximum_independent_sets(g: &Graph, limit: usize) -> usize {
    let comp = g.complement();
    let (alpha, _) = max_clique_in(comp.adj_masks(), comp.full_mask());
    let mut found = 0;
    count_cliques_of_size(
        comp.adj_masks(),
        alpha,
        0,
        comp.full_mask(),
        limit,
        &mut found,
    );
    found
}

/// The maximum independent set, if it is the only one of size α(G).
pub fn unique_max_independent_set(g: &Graph) -> Option<NodeSet> {
    if count_maximum_independent_sets(g, 2) == 1 {
        Some(independence_number(g).1)
    } else {
        None
    }
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = lowest(p | x);
    let mut branch = p & !adj[pivot];
    while branch != 0 {
        let v = lowest(branch);
        branch &= !bit(v);
        bron_kerbosch(adj, r | bit(v), p & adj[v], x & adj[v], out);
        p &= !bit(v);
        x |= bit(v);
    }
}

/// All maximal independent sets, sorted.
pub fn enumerate_maximal_independent_sets(g: &Graph, cap: usize) -> Result<Vec<NodeSet>> {
    check_cap(g.n(), cap)?;
    let comp = g.complement();
    let mut masks = Vec::new();
    bron_kerbosch(comp.adj_masks(), 0, comp.full_mask(), 0, &mut masks);
    let mut sets: Vec<NodeSet> = masks.into_iter().map(NodeSet::from_mask).collect();
    sets.sort();
    Ok(sets)
}

/// True iff `s` is independent and every node outside `s` has at least `k`
/// neighbours inside it.
pub fn is_k_dominating_independent(g: &Graph, s: &NodeSet, k: usize) -> bool {
    let m = s.mask();
    g.is_independent(s)
        && (0..g.n())
            .filter(|&v| m & bit(v) == 0)
            .all(|v| (g.adj_mask(v) & m).count_ones() as usize >= k)
}

struct WeightedSearch<'a> {
    adj: &'a [u64],
    w: &'a [f64],
    best_weight: f64,
    best: u64,
}

impl WeightedSearch<'_> {
    const EPS: f64 = 1e-12;

    fn beats_best(&self, weight: f64) -> bool {
        weight > self.best_weight + Self::EPS * self.best_weight.max(1.0)
    }

    fn expand(&mut self, chosen: u64, weight: f64, cand: u64) {
        if cand == 0 {
            if self.beats_best(weight) {
                self.best_weight = weight;
                self.best = chosen;
            }
            return;
        }
        let mut rest = cand;
        let mut potential = weight;
        while rest != 0 {
            potential += self.w[lowest(rest)];
            rest &= rest - 1;
        }
        if !self.beats_best(potential) {
            return;
        }
        let v = lowest(cand);
        self.expand(
            chosen | bit(v),
            weight + self.w[v],
            cand & !self.adj[v] & !bit(v),
        );
        self.expand(chosen, weight, cand & !bit(v));
    }
}

/// Maximum-weight independent set for positive node weights.
pub fn weighted_max_independent_set(g: &Graph, w: &[f64]) -> Result<(f64, NodeSet)> {
    if w.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: w.len(),
        });
    }
    if let Some((node, &weight)) = w.iter().enumerate().find(|(_, &x)| x <= 0.0 || x.is_nan()) {
        return Err(Error::NonPositiveWeight { node, weight });
    }
    let mut search = WeightedSearch {
        adj: g.adj_masks(),
        w,
        best_weight: 0.0,
        best: 0,
    };
    search.expand(0, 0.0, g.full_mask());
    let witness = NodeSet::from_mask(search.best);
    let total = witness.iter().map(|v| w[v]).sum();
    Ok((total, witness))
}
