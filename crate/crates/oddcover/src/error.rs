use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not symmetric at entry ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix has a nonzero diagonal entry at index {0}")]
    NonzeroDiagonal(usize),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{family}({param}) needs {needed} vertices, exceeding the budget of {budget}")]
    VertexBudget {
        family: &'static str,
        param: usize,
        needed: usize,
        budget: usize,
    },
    #[error("graph is not bipartite: odd cycle through vertex {0}")]
    NotBipartite(usize),
    #[error("graph is not a forest: cycle through vertex {0}")]
    NotAForest(usize),
    #[error("ground set mismatch: cover has n = {cover}, graph has n = {graph}")]
    GroundSetMismatch { cover: usize, graph: usize },
    #[error("biclique at index {index} meets S oddly on both partite sets")]
    OddOddBiclique { index: usize },
    #[error("invalid adjacent-twin matching: {0}")]
    InvalidMatching(String),
    #[error("cannot merge the trailing coordinate bicliques: {0}")]
    MergeFailed(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
