use thiserror::Error;

/// Largest vertex count for which procedures enumerate all `2^n` configurations.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("invalid parameter: {0}")]
    Domain(String),

    #[error("graph must be undirected for this operation")]
    NotUndirected,

    #[error("{n} vertices exceeds the exhaustive limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("vertex {0} is not reachable from the roots")]
    Unreachable(usize),

    #[error("word is not a permutation of the vertex set")]
    NotPermutation,

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_exhaustive(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { n, limit })
    } else {
        Ok(())
    }
}
