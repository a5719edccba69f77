//! Centers and branches of trees.

use serde::{Deserialize, Serialize};

use super::{Graph, NodeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeKind {
    Line,
    Star,
    Starlike,
    GeneralTree,
    NotATree,
}

impl std::fmt::Display for TreeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TreeKind::Line => "line",
            TreeKind::Star => "star",
            TreeKind::Starlike => "starlike",
            TreeKind::GeneralTree => "general_tree",
            TreeKind::NotATree => "not_a_tree",
        })
    }
}

/// Far end of a branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchEnd {
    Center(usize),
    /// The leaf itself also belongs to the interior.
    Leaf(usize),
}

/// A center-free path hanging off `center`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub center: usize,
    pub end: BranchEnd,
    pub interior: NodeSet,
}

impl Branch {
    pub fn is_odd(&self) -> bool {
        self.interior.len() % 2 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeStructure {
    pub kind: TreeKind,
    pub centers: NodeSet,
    pub branches: Vec<Branch>,
    /// Branch count including center-to-center adjacencies.
    pub m: usize,
    /// Branch count with a non-empty interior only.
    pub m_listed: usize,
    /// Branches with an odd number of interior nodes.
    pub r: usize,
    /// Leaf-terminated branches per center, aligned with `centers`.
    pub leaf_branches_per_center: Vec<usize>,
}

impl TreeStructure {
    fn without_branches(kind: TreeKind) -> Self {
        TreeStructure {
            kind,
            centers: NodeSet::default(),
            branches: Vec::new(),
            m: 0,
            m_listed: 0,
            r: 0,
            leaf_branches_per_center: Vec::new(),
        }
    }

    pub fn all_branches_odd(&self) -> bool {
        self.branches.iter().all(Branch::is_odd)
    }
}

/// Decomposes a tree into centers (degree at least 3) and branches.
///
/// A branch between two adjacent centers has an empty interior but still
/// counts toward `m`; `m_listed` leaves those out.
pub fn tree_structure(g: &Graph) -> TreeStructure {
    let n = g.n();
    if n == 0 || !g.is_connected() || g.edge_count() != n - 1 {
        return TreeStructure::without_branches(TreeKind::NotATree);
    }
    let centers: NodeSet = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    if centers.is_empty() {
        return TreeStructure::without_branches(TreeKind::Line);
    }

    let mut branches = Vec::new();
    for c in centers.iter() {
        for &first in g.neighbors(c) {
            let mut interior = Vec::new();
            let (mut prev, mut cur) = (c, first);
            let end = loop {
                if centers.contains(cur) {
                    break BranchEnd::Center(cur);
                }
                interior.push(cur);
                match g.neighbors(cur).iter().find(|&&v| v != prev) {
                    Some(&next) => (prev, cur) = (cur, next),
                    None => break BranchEnd::Leaf(cur),
                }
            };
            // Center-to-center paths are seen from both ends; keep one.
            if let BranchEnd::Center(other) = end {
                if other < c {
                    continue;
                }
            }
            branches.push(Branch {
                center: c,
                end,
                interior: interior.into_iter().collect(),
            });
        }
    }

    let leaf_branches_per_center = centers
        .iter()
        .map(|c| {
            branches
                .iter()
                .filter(|b| b.center == c && matches!(b.end, BranchEnd::Leaf(_)))
                .count()
        })
        .collect();
    let kind = if centers.len() > 1 {
        TreeKind::GeneralTree
    } else if branches.iter().all(|b| b.interior.len() == 1) {
        TreeKind::Star
    } else {
        TreeKind::Starlike
    };
    TreeStructure {
        kind,
        m: branches.len(),
        m_listed: branches.iter().filter(|b| !b.interior.is_empty()).count(),
        r: branches.iter().filter(|b| b.is_odd()).count(),
        centers,
        branches,
        leaf_branches_per_center,
    }
}
