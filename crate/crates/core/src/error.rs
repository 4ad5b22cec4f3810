use thiserror::Error;

/// Errors produced by tree construction, verification and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge list contains a cycle (closed by edge {edge})")]
    CycleDetected { edge: usize },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("edge {edge} duplicates edge {first}")]
    DuplicateEdge { edge: usize, first: usize },
    #[error("vertex label {label} is outside 0..{n}")]
    BadLabel { label: usize, n: usize },
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("u and v are the same vertex ({0})")]
    SameVertex(usize),
    #[error("edge index {index} is out of range (tree has {m} edges)")]
    BadEdgeIndex { index: usize, m: usize },
    #[error("operation needs at least two vertices")]
    TrivialTree,
    #[error("coloring covers {got} edges but the tree has {expected}")]
    CoverageError { expected: usize, got: usize },
    #[error("edge {edge} has color {color}, outside 1..={k}")]
    BadColor { edge: usize, color: u32, k: u32 },
    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),
    #[error("not a subtree of the host tree: {0}")]
    NotASubtree(String),
    #[error("input too large: {what} is {got}, limit {limit}")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("search budget of {budget} nodes exceeded; value lies in [{lower}, {upper}]")]
    BudgetExceeded {
        budget: u64,
        lower: u32,
        upper: u32,
    },
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error("no certificate construction for family {0}")]
    NoConstruction(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
