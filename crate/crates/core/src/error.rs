use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("invalid window {window:?}: {reason}")]
    InvalidWindow { window: Vec<i64>, reason: String },

    #[error("invalid generator index {index} for rank {n}")]
    InvalidGenerator { n: usize, index: usize },

    #[error("truncation exceeded: element of length {length} lies beyond the length bound {bound}")]
    TruncationExceeded { length: usize, bound: usize },

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("star operations require n >= 3, got n = {0}")]
    UnsupportedRank(usize),

    #[error("{element} is not in the {side} star domain of index {index}")]
    StarDomain {
        element: String,
        side: &'static str,
        index: usize,
    },

    #[error("{element} is not a maximal length representative of its double coset")]
    NotMaxRep { element: String },

    #[error("invalid partition {0:?}")]
    InvalidPartition(Vec<usize>),

    #[error("invalid lattice tuple: {0}")]
    InvalidTuple(String),

    #[error("not in the enumerated table: {0}")]
    NotInTable(String),

    #[error("basis mismatch: expected {expected}, found {found}")]
    BasisMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("lattice recursion failed: {0}")]
    Lattice(String),
}

pub type Result<T> = std::result::Result<T, Error>;
