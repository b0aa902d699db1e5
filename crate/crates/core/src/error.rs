use thiserror::Error;

use crate::pattern::DoubleStarWitness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex count {0} outside 1..=64")]
    VertexCount(usize),

    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("planar_code: {0}")]
    PlanarCode(String),

    #[error("{what}: {got} exceeds the limit of {limit}")]
    Guard {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("invalid constraints: {0}")]
    InvalidConstraints(String),

    #[error("invalid pattern S({m},{l}): arm counts must be at least 1")]
    InvalidPattern { m: usize, l: usize },

    #[error("graph contains S(3,3): {0}")]
    NotS33Free(DoubleStarWitness),

    #[error("graph is not planar")]
    NotPlanar,

    #[error("star-block base construction failed: {0}")]
    BaseConstruction(String),

    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),

    #[error("class B1 bound needs t >= 1")]
    ZeroBlockCount,

    #[error("construction failed self-verification: {0}")]
    SelfVerification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
