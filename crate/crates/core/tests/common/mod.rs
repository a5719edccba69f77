#![allow(dead_code)]

use netgame::{Graph, NodeSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Builds a graph from 1-based edge pairs.
pub fn one_based(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().map(|&(a, b)| (a - 1, b - 1))).unwrap()
}

pub fn line7() -> Graph {
    Graph::path(7)
}

/// Center 2 with chains {0,1}, {3,4}, {5,6}.
pub fn starlike7() -> Graph {
    one_based(7, &[(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 7)])
}

/// Centers 1 and 4 joined through node 3, each with two leaves.
pub fn two_center_tree() -> Graph {
    one_based(7, &[(1, 2), (2, 3), (2, 4), (4, 5), (5, 6), (5, 7)])
}

/// Two triangles joined by an edge, then a short tree; α = 4, ω = 3.
pub fn ten_node_graph() -> Graph {
    one_based(
        10,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (4, 6),
            (5, 6),
            (6, 7),
            (7, 8),
            (9, 8),
            (10, 7),
            (3, 1),
        ],
    )
}

/// Tree with four centers, two of them adjacent to a third.
pub fn twelve_node_tree() -> Graph {
    one_based(
        12,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (5, 8),
            (3, 10),
            (10, 11),
            (9, 2),
            (10, 12),
        ],
    )
}

pub fn set<const N: usize>(items: [usize; N]) -> NodeSet {
    NodeSet::from(items)
}

/// Erdős–Rényi graph on `n` nodes.
pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random connected graph with `2 ≤ n ≤ max_n`, by rejection.
pub fn random_connected_graph(rng: &mut StdRng, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// Random recursive tree: node k attaches to a uniform earlier node.
pub fn random_tree(rng: &mut StdRng, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|k| (rng.gen_range(0..k), k)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Fixed seeded sample of connected graphs with 2..=max_n nodes.
pub fn connected_sample(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_connected_graph(&mut rng, max_n))
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Every subset of `0..n` as a node set.
pub fn all_subsets(n: usize) -> impl Iterator<Item = NodeSet> {
    (0..1u64 << n).map(NodeSet::from_mask)
}

pub mod strategy {
    use netgame::Graph;
    use proptest::prelude::*;
    use proptest::sample::Index;

    /// Arbitrary simple graph with `min_n..=max_n` nodes.
    pub fn graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
        (min_n..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
                move |bits| {
                    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                    let edges: Vec<_> = pairs
                        .zip(bits)
                        .filter(|(_, b)| *b)
                        .map(|(e, _)| e)
                        .collect();
                    Graph::from_edges(n, edges).unwrap()
                },
            )
        })
    }

    /// Tree on `2..=max_n` nodes: node k hangs off an earlier node.
    pub fn tree(max_n: usize) -> impl Strategy<Value = Graph> {
        proptest::collection::vec(any::<Index>(), 1..max_n).prop_map(|parents| {
            let n = parents.len() + 1;
            let edges: Vec<_> = parents
                .iter()
                .enumerate()
                .map(|(k, p)| (p.index(k + 1), k + 1))
                .collect();
            Graph::from_edges(n, edges).unwrap()
        })
    }
}
