use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("not cuttable: {0}")]
    NotCuttable(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("no route: {0}")]
    NoRoute(String),
    #[error("systems live on different triangulations")]
    IncompatibleTriangulation,
    #[error("components are not pairwise disjoint: {0} and {1} cross")]
    NotDisjoint(usize, usize),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("malformed system: {0}")]
    MalformedSystem(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid system: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
