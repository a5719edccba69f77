//! Undirected simple graphs and the combinatorial quantities built on them.

mod io;
mod search;
mod tree;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

pub use io::{load_graph, GraphDocument};
pub(crate) use search::max_clique_in;
pub use search::{
    clique_number, count_maximum_independent_sets, enumerate_maximal_independent_sets,
    independence_number, is_k_dominating_independent, max_clique, unique_max_independent_set,
    weighted_max_independent_set,
};
pub use tree::{tree_structure, Branch, BranchEnd, TreeKind, TreeStructure};

/// Largest graph the bitmask-based exact searches can handle.
pub const MAX_NODES: usize = 64;

/// Sorted, duplicate-free set of node indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut members = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            members.push(v);
            rest &= rest - 1;
        }
        Self(members)
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn insert(&mut self, v: usize) {
        if let Err(pos) = self.0.binary_search(&v) {
            self.0.insert(pos, v);
        }
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self(members)
    }
}

impl<const N: usize> From<[usize; N]> for NodeSet {
    fn from(members: [usize; N]) -> Self {
        members.into_iter().collect()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Undirected simple graph on nodes `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted. Adjacency is kept
/// both as neighbour lists and as `u64` bitmasks for the exact searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range nodes.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_NODES {
            return Err(ParseError::TooManyNodes { n, max: MAX_NODES }.into());
        }
        let mut adj = vec![0u64; n];
        let mut list = Vec::new();
        for (k, (a, b)) in edges.into_iter().enumerate() {
            let line = k + 1;
            for node in [a, b] {
                if node >= n {
                    return Err(ParseError::OutOfRange { line, node, n }.into());
                }
            }
            if a == b {
                return Err(ParseError::SelfLoop { line, node: a }.into());
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if adj[u] & (1 << v) != 0 {
                return Err(ParseError::DuplicateEdge { line, u, v }.into());
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            list.push((u, v));
        }
        Ok(Self::from_masks(n, adj, list))
    }

    fn from_masks(n: usize, adj: Vec<u64>, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        let neighbors = adj.iter().map(|&m| NodeSet::from_mask(m).0).collect();
        Self {
            n,
            edges,
            neighbors,
            adj,
        }
    }

    /// `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, []).expect("edgeless graph is valid")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 nodes");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete graph is valid")
    }

    /// Star with center 0 and peripheral nodes `1..=peripherals`.
    pub fn star(peripherals: usize) -> Self {
        Self::from_edges(peripherals + 1, (1..=peripherals).map(|v| (0, v))).expect("star is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Neighbourhood of `v` as a bitmask.
    pub fn adj_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn adj_masks(&self) -> &[u64] {
        &self.adj
    }

    /// Bitmask with one bit per node.
    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1 << v) != 0
    }

    pub fn is_independent(&self, s: &NodeSet) -> bool {
        let m = s.mask();
        s.iter().all(|v| self.adj[v] & m == 0)
    }

    pub fn is_clique(&self, s: &NodeSet) -> bool {
        let m = s.mask();
        s.iter().all(|v| (self.adj[v] | (1 << v)) & m == m)
    }

    pub fn isolated_node(&self) -> Option<usize> {
        (0..self.n).find(|&v| self.adj[v] == 0)
    }

    pub fn complement(&self) -> Self {
        let full = self.full_mask();
        let adj: Vec<u64> = (0..self.n)
            .map(|v| full & !self.adj[v] & !(1u64 << v))
            .collect();
        let edges = (0..self.n)
            .flat_map(|u| {
                let above = u64::MAX.checked_shl(u as u32 + 1).unwrap_or(0);
                NodeSet::from_mask(adj[u] & above)
                    .0
                    .into_iter()
                    .map(move |v| (u, v))
            })
            .collect();
        Self::from_masks(self.n, adj, edges)
    }

    /// Subgraph induced by `keep`; the map sends new indices to old ones.
    pub fn induced_subgraph(&self, keep: &NodeSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().collect();
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            index[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let sub = Graph::from_edges(map.len(), edges).expect("induced subgraph is valid");
        (sub, map)
    }

    /// Graph with node `v` removed; the map sends new indices to old ones.
    pub fn without_node(&self, v: usize) -> (Graph, Vec<usize>) {
        let keep = NodeSet::from_mask(self.full_mask() & !(1u64 << v));
        self.induced_subgraph(&keep)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_mask(0) == self.full_mask()
    }

    fn component_mask(&self, start: usize) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    /// Connected components as induced subgraphs, ordered by smallest node.
    pub fn connected_components(&self) -> Vec<(Graph, Vec<usize>)> {
        let mut remaining = self.full_mask();
        let mut parts = Vec::new();
        while remaining != 0 {
            let start = remaining.trailing_zeros() as usize;
            let comp = self.component_mask(start);
            remaining &= !comp;
            parts.push(self.induced_subgraph(&NodeSet::from_mask(comp)));
        }
        parts
    }
}

/// Free-function form of [`Graph::connected_components`].
pub fn connected_components(g: &Graph) -> Vec<(Graph, Vec<usize>)> {
    g.connected_components()
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n > MAX_NODES {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}
