use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Problems found while reading a graph document.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: node {node} out of range for n = {n}")]
    OutOfRange { line: usize, node: usize, n: usize },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("graph has {n} nodes; exact searches support at most {max}")]
    TooManyNodes { n: usize, max: usize },
    #[error("invalid JSON graph: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("graph has {n} nodes, above the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("sweep needs {required} support evaluations, above the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("substitutability delta = {0} outside the allowed range")]
    DeltaOutOfRange(f64),
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("weight of node {node} is {weight}; weights must be positive")]
    NonPositiveWeight { node: usize, weight: f64 },
    #[error("node set is not independent")]
    NotIndependent,
    #[error("independent set of size {size} is not maximum (alpha = {alpha})")]
    NotMaximum { size: usize, alpha: usize },
    #[error("node {node} has effort {value}, expected zero")]
    PositiveCoordinate { node: usize, value: f64 },
    #[error("profile is not a Nash equilibrium (worst violation at node {node}: {amount:e})")]
    NotEquilibrium { node: usize, amount: f64 },
    #[error("node {0} is isolated")]
    IsolatedNode(usize),
    #[error("graph class mismatch: expected {expected}, found {found}")]
    WrongGraphClass { expected: String, found: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
