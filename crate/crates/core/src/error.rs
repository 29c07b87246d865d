use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative degree {0}")]
    NegativeDegree(i64),
    #[error("degree {0} exceeds the supported maximum of {max}", max = crate::multiset::MAX_DEGREE)]
    DegreeTooLarge(i64),
    #[error("arithmetic overflow while summing degrees")]
    Overflow,
    #[error("sigma profile is not nonincreasing at index {0}")]
    NotMonotone(usize),
    #[error("not graphical: {0}")]
    NotGraphical(String),
    #[error("degree sequence is trivial for k = {0}")]
    Trivial(u32),
    #[error("degree sequence is empty")]
    Empty,
    #[error("k must be positive")]
    ZeroK,
    #[error("{0} is not an element of the multiset")]
    NotAnElement(u32),
    #[error("cannot decrement a zero entry")]
    ZeroDecrement,
    #[error("invalid elementary step: {0}")]
    InvalidStep(String),
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("{what} limit exceeded: {actual} > {limit}")]
    LimitExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loops are not allowed in a loopless multigraph (vertex {0})")]
    Loop(usize),
    #[error("invalid deletion script: {0}")]
    Script(String),
    #[error("invalid covering parameters: {0}")]
    InvalidParams(String),
    #[error("z = {z} is below the replication bound (kappa*z = {kz} < r*v = {rv})")]
    BelowReplication { z: u64, kz: u64, rv: u64 },
    #[error("degree sum is odd")]
    OddSum,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors raised by size guards on exponential searches.
    pub fn is_resource_guard(&self) -> bool {
        matches!(self, Error::LimitExceeded { .. })
    }
}

pub(crate) fn check_limit(what: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        Err(Error::LimitExceeded {
            what,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}
