use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partitions have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("{0} is not a prime >= 3")]
    InvalidPrime(u64),
    #[error("partition {partition} is not {p}-restricted")]
    NotRestricted { partition: Partition, p: u64 },
    #[error("partition {partition} has a ladder of length {length} >= p = {p}")]
    LadderTooLong {
        partition: Partition,
        length: usize,
        p: u64,
    },
    #[error("shape mismatch: {0} vs {1}")]
    ShapeMismatch(Partition, Partition),
    #[error("size {n} exceeds the enumeration limit {limit}; pass an explicit override")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("matrix is not unitriangular: {0}")]
    NotUnitriangular(String),
    #[error("entry {0} is not p-integral")]
    NotPIntegral(String),
    #[error("entry {0} is not an integer")]
    NotIntegral(String),
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Whether the error comes from bad arguments rather than a failed
    /// internal consistency check.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::NotUnitriangular(_) | Error::NotPIntegral(_) | Error::NotIntegral(_) | Error::Inconsistent(_)
        )
    }
}
