//! Nash equilibria of public-goods games on networks with imperfect
//! substitutability.
//!
//! Agents sit on the nodes of an undirected graph and choose efforts
//! `x_i >= 0`. Agent `i` enjoys `b(x_i + delta * sum_{j ~ i} x_j) - c * x_i`,
//! which yields the best response `max(0, e* - delta * sum_{j ~ i} x_j)`.
//! Equilibria (scaled by `1/e*`) are exactly the solutions of the linear
//! complementarity problem `LCP(I + delta*A, -1)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: graphs, node sets, exact independent-set / clique searches and
//!   the center/branch decomposition of trees.
//! * [`lcp`]: support-enumeration solver for `LCP(I + delta*A, -1)`, solution
//!   verification, restriction to subgraphs and independent-clique solutions.
//! * [`game`]: best responses, Nash checks, equilibrium enumeration, the
//!   benefit-function family and welfare.
//! * [`bounds`]: closed-form bounds on maximum aggregate play and welfare.
//! * [`sweep`]: substitutability sweeps that recover validity intervals of
//!   equilibrium support patterns.
//! * [`cli`]: the `netgame` command-line front end.

pub mod bounds;
pub mod cli;
mod error;
pub mod game;
pub mod graph;
pub mod lcp;
mod linalg;
pub(crate) mod serde_util;
pub mod sweep;

pub use error::{Error, ParseError, Result};
pub use graph::{Graph, NodeSet, TreeKind, TreeStructure};

/// Default limit on node count for exhaustive (2^n) enumerations.
pub const DEFAULT_CAP: usize = 20;

/// Default numeric tolerance for feasibility, positivity and complementarity.
pub const DEFAULT_TOL: f64 = 1e-9;
