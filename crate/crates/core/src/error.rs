use thiserror::Error;

use crate::lattice::SurfaceClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("class {0} is not effective")]
    NotEffective(SurfaceClass),
    #[error("the zero class carries no invariants")]
    ZeroClass,
    #[error("dimension mismatch for {class}: {points} point insertions, expected {expected}")]
    DimensionMismatch {
        class: SurfaceClass,
        points: i64,
        expected: i64,
    },
    #[error("unsupported query: {0}")]
    Unsupported(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0} is not in the domain of the dictionary")]
    Lookup(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
