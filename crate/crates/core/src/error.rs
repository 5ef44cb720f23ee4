use thiserror::Error;

use crate::complex::{Simplex, Vertex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {0} lies in more edges than the degree bound allows")]
    DegreeExceeded(Vertex),
    #[error("simplex {0} listed more than once")]
    DuplicateSimplex(Simplex),
    #[error("simplex lists vertex {0} more than once")]
    RepeatedVertex(Vertex),
    #[error("empty vertex tuple")]
    EmptySimplex,
    #[error("degree bound must be positive")]
    ZeroDegreeBound,
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("unknown simplex {0}")]
    UnknownSimplex(Simplex),
    #[error("complex has no vertices")]
    EmptyComplex,
    #[error("complex has no {0}-simplices")]
    EmptyDimension(usize),
    #[error("operator of size {size} exceeds the dense cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("spectral support bound is zero")]
    DegenerateSupport,
    #[error("spectral cut {0} is outside (0, 1)")]
    InvalidCut(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("profile radii do not cover 1..={0}")]
    RadiusMismatch(usize),
    #[error("no corpus entry is within tolerance of the sampled profile")]
    NoMatch,
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
