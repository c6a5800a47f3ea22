use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Cartan type {0}{1}")]
    InvalidType(char, usize),
    #[error("coweight is not in the coroot lattice: {0}")]
    NotCoroot(String),
    #[error("coweight is not dominant: {0}")]
    NotDominant(String),
    #[error("degenerate sample: {0}")]
    Degenerate(String),
    #[error("series did not terminate within {0} terms")]
    NotNilpotent(usize),
    #[error("no solution in the ansatz span: {0}")]
    NoSolution(String),
    #[error("relation failed: {0}")]
    Relation(String),
    #[error("unknown representation {0}")]
    UnknownRep(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
