use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown cell id {0}")]
    UnknownCell(usize),
    #[error("cell {0} is not a vertex")]
    NotAVertex(usize),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("not a subcomplex: cell {0} has a face outside the set")]
    NotSubcomplex(usize),
    #[error("cell {0} is fixed setwise but not pointwise")]
    SetwiseNotPointwise(usize),
    #[error("complex has collapsed faces; operation needs a nondegenerate complex")]
    Degenerate,
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("cut rectangles {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("k-vector is not integral")]
    NonIntegral,
    #[error("k-vector entry {0} is negative")]
    Negative(usize),
    #[error("bad zero pattern at positions {0:?}")]
    BadZeroPattern(Vec<usize>),
    #[error("side lengths do not determine k uniquely and fail the solvability conditions")]
    Unsolvable,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("not in category C: simplex {0} repeats an edge")]
    NotInCategoryC(usize),
    #[error("invalid kit: {0}")]
    InvalidKit(String),
    #[error("hyperplane {0} splits the complex into more than two components")]
    MoreThanTwoComponents(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no invariant cube found")]
    NoInvariantCube,
    #[error("empty input")]
    EmptyInput,
    #[error("vertices {0} and {1} lie in different components")]
    Disconnected(usize, usize),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
