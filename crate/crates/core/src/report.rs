//! Serializable report record with a stable key order, shared by the CLI
//! and the Python bindings.

use serde::{Deserialize, Serialize};

use crate::decompose::{Decomposition, RegularityReport};
use crate::error::Result;
use crate::semigroup::SemigroupPresentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub dim: u64,
    pub alpha: u64,
    /// Canonical generator order: corners first, then the sorted interior.
    pub generators: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub gamma: Vec<Vec<i64>>,
    pub h: Vec<i64>,
    pub deg_h: i64,
    pub ideal_gens: Vec<Vec<i64>>,
    pub ideal_regularity: i64,
    pub in_gamma_set: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheckReport {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub satisfied: bool,
}

/// The full report. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputEcho,
    pub f: i64,
    pub codim: i64,
    pub dim: i64,
    pub alpha: i64,
    pub reduction_number: i64,
    pub regularity: i64,
    pub seminormal: bool,
    pub normal: bool,
    pub cohen_macaulay: bool,
    pub classes: Vec<ClassReport>,
    pub bound_checks: Vec<BoundCheckReport>,
    pub warnings: Vec<String>,
}

pub fn build_report(
    p: &SemigroupPresentation,
    dec: &Decomposition,
    rr: &RegularityReport,
) -> Result<Report> {
    let generators = p
        .generators()
        .iter()
        .map(|g| g.to_i64_vec())
        .collect::<Result<Vec<_>>>()?;
    let mut classes = Vec::with_capacity(dec.classes.len());
    for (t, class) in dec.classes.iter().enumerate() {
        let gamma = class
            .members
            .iter()
            .map(|m| m.to_i64_vec())
            .collect::<Result<Vec<_>>>()?;
        let ideal_gens = class
            .ideal
            .min_gens()
            .iter()
            .map(|g| g.exponents().to_i64_vec())
            .collect::<Result<Vec<_>>>()?;
        classes.push(ClassReport {
            gamma,
            h: class.shift.to_i64_vec()?,
            deg_h: class.shift_degree as i64,
            ideal_gens,
            ideal_regularity: rr.class_regularities[t] as i64,
            in_gamma_set: rr.maximizer_indices.contains(&t),
        });
    }
    Ok(Report {
        input: InputEcho {
            dim: p.dim() as u64,
            alpha: p.alpha(),
            generators,
        },
        f: rr.degree as i64,
        codim: rr.codim as i64,
        dim: rr.dim as i64,
        alpha: rr.alpha as i64,
        reduction_number: rr.reduction_number as i64,
        regularity: rr.regularity as i64,
        seminormal: rr.seminormal,
        normal: rr.normal,
        cohen_macaulay: rr.cohen_macaulay,
        classes,
        bound_checks: rr
            .bound_checks
            .iter()
            .map(|b| BoundCheckReport {
                name: b.name.clone(),
                lhs: b.lhs,
                rhs: b.rhs,
                satisfied: b.satisfied,
            })
            .collect(),
        warnings: rr.warnings.clone(),
    })
}
