use thiserror::Error;

/// Errors surfaced by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("variable count mismatch: {left} vs {right}")]
    VarMismatch { left: usize, right: usize },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid polyhedron: {0}")]
    InvalidPolyhedron(String),

    #[error("vertex {0} is not a vertex of the polyhedron")]
    NotAVertex(usize),

    #[error("not a star: {0}")]
    NotAStar(String),

    #[error("point lies outside the polyhedron")]
    OutsidePolyhedron,

    #[error("invalid rectilinear map: {0}")]
    InvalidMap(String),

    #[error("no simplex assignment for source simplex {0:?}")]
    MissingAssignment(Vec<usize>),

    #[error("maps are not adjacent on source simplex {0:?}")]
    NotAdjacent(Vec<usize>),

    #[error("polyhedron mismatch between operands")]
    BaseMismatch,

    #[error("form is not closed")]
    NotClosed,

    #[error("simplex not contained in the variety: {0}")]
    NotInVariety(String),

    #[error("unsupported for this presentation: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
