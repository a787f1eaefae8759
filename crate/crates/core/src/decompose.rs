//! Decomposition of the semigroup ring into shifted monomial ideals, one per
//! Apery residue class, and the invariants read off from it: regularity,
//! reduction number, degree, codimension, and the seminormal / normal /
//! Cohen-Macaulay classifications, together with recorded bound checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::homology::{betti_table, CoeffField};
use crate::lattice::IntVec;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::semigroup::{apery_set, AperyClass, LayeredMembership, SemigroupPresentation};
use crate::Caps;

/// One summand of the decomposition: the class, its shift, and the monomial
/// ideal generated by the shifted members scaled down by `alpha`.
#[derive(Clone, Debug)]
pub struct DecompositionClass {
    pub members: Vec<IntVec>,
    pub shift: IntVec,
    pub shift_degree: u64,
    pub ideal: MonomialIdeal,
}

impl DecompositionClass {
    /// True when every member lies in the closed box with side `alpha`.
    pub fn in_box(&self, alpha: u64) -> bool {
        self.members.iter().all(|m| m.all_at_most(alpha))
    }
}

/// The full decomposition of the semigroup ring.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub dim: usize,
    pub alpha: u64,
    pub codim: u64,
    pub classes: Vec<DecompositionClass>,
}

impl Decomposition {
    /// The number of classes, which equals the degree of the ring.
    pub fn class_count(&self) -> u64 {
        self.classes.len() as u64
    }

    pub fn reduction_number(&self) -> u64 {
        self.classes
            .iter()
            .flat_map(|c| &c.members)
            .map(|m| {
                crate::lattice::integer_degree(m, self.alpha).expect("member degree")
            })
            .max()
            .unwrap_or(0)
    }

    pub fn is_seminormal(&self) -> bool {
        self.classes.iter().all(|c| c.in_box(self.alpha))
    }

    pub fn is_normal(&self) -> bool {
        self.classes
            .iter()
            .all(|c| c.members.iter().all(|m| m.all_below(self.alpha)))
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.classes.iter().all(|c| c.members.len() == 1)
    }
}

fn class_to_ideal(dim: usize, alpha: u64, class: &AperyClass) -> Result<MonomialIdeal> {
    let alpha_big = BigInt::from(alpha);
    let mut gens = Vec::with_capacity(class.members.len());
    for m in &class.members {
        let diff = m.sub(&class.shift);
        let mut exps = Vec::with_capacity(dim);
        for c in diff.coords() {
            let (q, r) = c.div_rem(&alpha_big);
            if !r.is_zero() || q < BigInt::zero() {
                return Err(Error::Internal(format!(
                    "member {m} minus shift {} is not a nonnegative multiple of alpha",
                    class.shift
                )));
            }
            exps.push(q);
        }
        gens.push(Monomial::new(IntVec::new(exps))?);
    }
    let ideal = MonomialIdeal::minimalize(dim, gens);
    // the shifted members always form the minimal generating set
    if ideal.min_gens().len() != class.members.len() {
        return Err(Error::Internal(format!(
            "class at shift {} does not generate minimally",
            class.shift
        )));
    }
    Ok(ideal)
}

/// Builds the decomposition and asserts its structural invariants: minimal
/// generation, unit ideals exactly at singleton classes, positive shift
/// degree and height at least two for the proper ideals.
pub fn decompose(
    p: &SemigroupPresentation,
    layers: &mut LayeredMembership,
) -> Result<Decomposition> {
    let apery = apery_set(p, layers)?;
    let mut classes = Vec::with_capacity(apery.classes.len());
    for class in &apery.classes {
        let ideal = class_to_ideal(p.dim(), p.alpha(), class)?;
        if ideal.is_unit() != (class.members.len() == 1) {
            return Err(Error::Internal(
                "unit ideal must correspond to a singleton class".into(),
            ));
        }
        if ideal.is_proper() {
            if class.shift_degree == 0 {
                return Err(Error::Internal(
                    "proper class ideal with shift of degree zero".into(),
                ));
            }
            let h = ideal.height()?;
            if h < 2 {
                return Err(Error::Internal(format!(
                    "class ideal {:?} has height {h} < 2",
                    ideal.min_gens()
                )));
            }
        }
        classes.push(DecompositionClass {
            members: class.members.clone(),
            shift: class.shift.clone(),
            shift_degree: class.shift_degree,
            ideal,
        });
    }
    Ok(Decomposition {
        dim: p.dim(),
        alpha: p.alpha(),
        codim: p.codim(),
        classes,
    })
}

/// A recorded inequality; violations are reported, never panicked on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub satisfied: bool,
}

impl BoundCheck {
    fn le(name: impl Into<String>, lhs: u64, rhs: u64) -> Self {
        BoundCheck {
            name: name.into(),
            lhs: lhs as i64,
            rhs: rhs as i64,
            satisfied: lhs <= rhs,
        }
    }

    fn eq(name: impl Into<String>, lhs: u64, rhs: u64) -> Self {
        BoundCheck {
            name: name.into(),
            lhs: lhs as i64,
            rhs: rhs as i64,
            satisfied: lhs == rhs,
        }
    }
}

/// Everything the regularity computation reports.
#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub regularity: u64,
    pub reduction_number: u64,
    /// Degree of the ring = number of classes.
    pub degree: u64,
    pub codim: u64,
    pub dim: u64,
    pub alpha: u64,
    pub seminormal: bool,
    pub normal: bool,
    pub cohen_macaulay: bool,
    /// Regularity of each class ideal, in class order.
    pub class_regularities: Vec<u64>,
    /// Indices (0-based, class order) attaining the regularity.
    pub maximizer_indices: Vec<usize>,
    pub bound_checks: Vec<BoundCheck>,
    pub warnings: Vec<String>,
}

/// Computes the regularity as the maximum over classes of the ideal
/// regularity plus the shift degree, and fills in the classification flags
/// and the always-true bound checks.
pub fn regularity_of_semigroup(
    p: &SemigroupPresentation,
    layers: &mut LayeredMembership,
    field: CoeffField,
    caps: &Caps,
) -> Result<(Decomposition, RegularityReport)> {
    let dec = decompose(p, layers)?;
    let mut warnings: Vec<String> = p.warnings().to_vec();

    let mut class_regularities = Vec::with_capacity(dec.classes.len());
    for (t, class) in dec.classes.iter().enumerate() {
        let table = betti_table(&class.ideal, field, caps.max_lcm_lattice)?;
        if table.has_torsion() {
            warnings.push(format!(
                "class {}: integral homology of the class ideal has torsion; \
                 regularity may depend on the characteristic",
                t + 1
            ));
        }
        class_regularities.push(table.regularity());
    }

    let contributions: Vec<u64> = dec
        .classes
        .iter()
        .zip(&class_regularities)
        .map(|(c, r)| r + c.shift_degree)
        .collect();
    let regularity = *contributions.iter().max().ok_or_else(|| {
        Error::Internal("decomposition has no classes".into())
    })?;
    let maximizer_indices: Vec<usize> = contributions
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == regularity)
        .map(|(t, _)| t)
        .collect();

    let reduction_number = dec.reduction_number();
    let degree = dec.class_count();
    let codim = dec.codim;
    let dim = dec.dim as u64;
    let seminormal = dec.is_seminormal();
    let normal = dec.is_normal();
    let cohen_macaulay = dec.is_cohen_macaulay();
    if normal && !seminormal {
        return Err(Error::Internal("normal ring that is not seminormal".into()));
    }

    let mut bound_checks = vec![
        BoundCheck::le("red_le_reg", reduction_number, regularity),
        BoundCheck::le("red_le_deg_minus_codim", reduction_number, degree - codim),
    ];
    if seminormal {
        bound_checks.push(BoundCheck::le(
            "seminormal_reg_le_dim_minus_1",
            regularity,
            dim - 1,
        ));
        bound_checks.push(BoundCheck::le(
            "seminormal_reg_le_deg_minus_codim",
            regularity,
            degree - codim,
        ));
        if dim <= 5 {
            bound_checks.push(BoundCheck::eq(
                "seminormal_dim_le5_reg_eq_red",
                regularity,
                reduction_number,
            ));
        }
        if dim <= 3 {
            bound_checks.push(BoundCheck::eq(
                "seminormal_dim_le3_cohen_macaulay",
                cohen_macaulay as u64,
                1,
            ));
        }
    }
    for (t, class) in dec.classes.iter().enumerate() {
        if class.ideal.is_proper() {
            let (_, var) = class.ideal.supp_and_var();
            let height = class.ideal.height()?;
            bound_checks.push(BoundCheck::le(
                format!("class_{}_ideal_reg_le_var_minus_height_plus_1", t + 1),
                class_regularities[t],
                var - height + 1,
            ));
        }
    }

    let report = RegularityReport {
        regularity,
        reduction_number,
        degree,
        codim,
        dim,
        alpha: dec.alpha,
        seminormal,
        normal,
        cohen_macaulay,
        class_regularities,
        maximizer_indices,
        bound_checks,
        warnings,
    };
    Ok((dec, report))
}

/// True iff every Apery element lies in the closed box with side `alpha`.
pub fn is_seminormal(
    p: &SemigroupPresentation,
    layers: &mut LayeredMembership,
) -> Result<bool> {
    let apery = apery_set(p, layers)?;
    let inside = apery.elements().all(|m| m.all_at_most(p.alpha()));
    Ok(inside)
}

/// True iff every Apery element has all coordinates strictly below `alpha`,
/// i.e. the Apery set consists of the class representatives themselves.
pub fn is_normal(p: &SemigroupPresentation, layers: &mut LayeredMembership) -> Result<bool> {
    let apery = apery_set(p, layers)?;
    let normal = apery.elements().all(|m| m.all_below(p.alpha()));
    if normal && !apery.elements().all(|m| m.all_at_most(p.alpha())) {
        return Err(Error::Internal("normal ring that is not seminormal".into()));
    }
    Ok(normal)
}

/// True iff every residue class of the Apery set is a singleton.
pub fn is_cohen_macaulay(
    p: &SemigroupPresentation,
    layers: &mut LayeredMembership,
) -> Result<bool> {
    let apery = apery_set(p, layers)?;
    Ok(apery.classes.iter().all(|c| c.members.len() == 1))
}

/// Convenience entry point: builds the membership layers with the given caps
/// and runs the full analysis.
pub fn analyze(
    p: &SemigroupPresentation,
    field: CoeffField,
    caps: &Caps,
) -> Result<(Decomposition, RegularityReport)> {
    let mut layers = LayeredMembership::new(p, *caps);
    regularity_of_semigroup(p, &mut layers, field, caps)
}
