//! Exact invariants of homogeneous simplicial affine semigroup rings.
//!
//! A semigroup in standard form (corner generators `alpha * e_i` plus
//! interior generators, all of coordinate sum `alpha`) decomposes, class by
//! residue class of its Apery set, into shifted monomial ideals. This crate
//! computes that decomposition with arbitrary-precision integer arithmetic
//! and reads off the Castelnuovo-Mumford regularity, the reduction number,
//! degree and codimension, and the seminormal / normal / Cohen-Macaulay
//! classifications. Closed forms for full Veronese rings and brute-force
//! oracles for cross-validation are included.
//!
//! The enumeration core ([`semigroup`]) materializes the semigroup layer by
//! degree layer under configurable caps; the homological core ([`homology`])
//! computes multigraded Betti numbers of monomial ideals through integer
//! Smith normal forms of upper Koszul complexes.

pub mod decompose;
pub mod error;
pub mod homology;
pub mod lattice;
pub mod monomial;
pub mod oracle;
pub mod report;
pub mod semigroup;
pub mod snf;
pub mod veronese;

pub use decompose::{analyze, Decomposition, RegularityReport};
pub use error::{Error, Result};
pub use homology::{betti_table, regularity, BettiTable, CoeffField};
pub use lattice::{class_representative, degree, integer_degree, IntVec, Lattice};
pub use monomial::{Monomial, MonomialIdeal};
pub use report::{build_report, Report};
pub use semigroup::{
    apery_set, class_count, reduction_number, star_sequences, AperyDecomposition,
    LayeredMembership, SemigroupPresentation, StarSequence,
};

/// Resource caps for the enumerative parts; computations exceeding a cap
/// refuse with a loud error instead of exhausting memory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Highest degree layer that may be materialized.
    pub max_degree: usize,
    /// Largest allowed cardinality of a single layer.
    pub max_layer: usize,
    /// Largest allowed lcm lattice of a monomial ideal.
    pub max_lcm_lattice: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_degree: 4096,
            max_layer: 1_000_000,
            max_lcm_lattice: 1 << 20,
        }
    }
}
