use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group closure exceeded the order limit {limit}")]
    OrderLimitExceeded { limit: usize },

    #[error("permutation of degree {found} given where degree {expected} was expected")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("{p} is not a prime")]
    NotPrime { p: u64 },

    #[error("prime {p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: usize },

    #[error("empty family of subgroups")]
    EmptyFamily,

    #[error("operation undefined on the empty poset")]
    EmptyPoset,

    #[error("poset is not a reduced lattice")]
    NotReducedLattice,

    #[error("reduced lattice is neither atomic nor coatomic")]
    NeitherAtomicNorCoatomic,

    #[error("poset carries no group action")]
    MissingAction,

    #[error("poset has {size} elements, above the limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },

    #[error("dimension {k} outside 1..={top}")]
    DimensionOutOfRange { k: usize, top: usize },

    #[error("simplicial complex is empty")]
    EmptyComplex,

    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("time budget exhausted")]
    Timeout,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
