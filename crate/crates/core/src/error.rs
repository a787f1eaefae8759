//! Error type shared by the whole crate.

use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::IntVec;

#[derive(Debug, Error)]
pub enum Error {
    /// A scaled unit vector required by the standard form is absent.
    #[error("missing corner generator {0}")]
    MissingCorner(IntVec),
    /// A generator whose coordinate sum is not the grading constant.
    #[error("non-homogeneous generator {gen}: coordinate sum {sum}, expected {expected}")]
    NonHomogeneous {
        gen: IntVec,
        sum: BigInt,
        expected: u64,
    },
    #[error("duplicate generator {0}")]
    DuplicateGenerator(IntVec),
    /// The standard form requires at least one non-corner generator.
    #[error("presentation has no interior generators")]
    EmptyInterior,
    #[error("generator {gen} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        gen: IntVec,
        found: usize,
        expected: usize,
    },
    #[error("negative coordinate in {0}")]
    NegativeCoordinate(IntVec),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("generators do not span a full-rank sublattice")]
    RankDeficient,
    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(IntVec),
    #[error("operation undefined for the unit ideal")]
    UnitIdeal,
    #[error("degenerate Veronese parameters: need dimension >= 2 and alpha >= 2")]
    DegenerateParameters,
    /// A configurable resource cap was hit; the computation refused to continue.
    #[error("resource cap exceeded: {what} (cap {cap})")]
    BoundExceeded { what: String, cap: usize },
    /// Violation of an invariant the theory guarantees; signals a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
