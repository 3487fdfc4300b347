use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 token")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("graph6 token for n={n} needs {expected} bytes but ends at offset {found}")]
    Length { n: usize, expected: usize, found: usize },
    #[error("nonzero padding bits in final byte at offset {offset}")]
    NonzeroPadding { offset: usize },
    #[error("graphs on {0} vertices are not supported by graph6")]
    Unsupported(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path length k must be at least 2, got {0}")]
    InvalidLength(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwapError {
    #[error("vertices {0:?} must be distinct and in range")]
    BadVertices(Vec<usize>),
    #[error("{0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("deg({vertex}) = {found}, expected {expected}")]
    Degree { vertex: usize, found: usize, expected: &'static str },
    #[error("no diamond with ends {0} and {1}")]
    NoDiamond(usize, usize),
    #[error("diamond middle indices must satisfy i < j < width ({width}), got i={i}, j={j}")]
    MiddleIndex { i: usize, j: usize, width: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("canonical labeling exceeded the search budget of {budget} nodes on a graph with {n} vertices")]
    BudgetExceeded { budget: u64, n: usize },
    #[error("invalid isomorphism certificate: {0}")]
    InvalidCertificate(String),
    #[error("P_k map is not a bijection: {0}")]
    NotBijective(String),
    #[error("color vector has length {found}, expected {expected}")]
    ColorLength { expected: usize, found: usize },
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("infeasible thorn count: {component} = {value}")]
    Infeasible { component: String, value: String },
    #[error("case ({case}) is excluded for Whitney type {kind}")]
    Excluded { case: &'static str, kind: u8 },
    #[error("generalized K_{{3,3}} case ({0}) is not supported; only (i) and (vii) are constructed")]
    UnsupportedCase(String),
    #[error("base graph is not bipartite")]
    NotBipartite,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("n = {n} exceeds the enumeration limit of {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("n must be at least 1")]
    ZeroOrder,
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}
