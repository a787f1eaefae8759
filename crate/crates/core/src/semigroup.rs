//! Validated standard-form semigroup presentations, layered membership
//! enumeration, Apery classes with their shifts, the reduction number, and
//! the enumeration of subtraction sequences used by the property tests.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{class_representative, integer_degree, lattice_from_generators, IntVec};
use crate::Caps;

/// A homogeneous simplicial affine semigroup in standard form: the corner
/// generators `alpha * e_1, .., alpha * e_d` plus at least one interior
/// generator, all with coordinate sum `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupPresentation {
    dim: usize,
    alpha: u64,
    interior: Vec<IntVec>,
    warnings: Vec<String>,
}

impl SemigroupPresentation {
    /// Validates a raw generator list against the standard form.
    ///
    /// Fails on a missing corner, a generator whose coordinate sum is not
    /// `alpha`, duplicates, or an empty interior. A common factor in the
    /// interior coordinates (meaning `alpha` was not chosen minimal) is
    /// recorded as a warning, not an error.
    pub fn new(dim: usize, alpha: u64, raw: Vec<IntVec>) -> Result<Self> {
        if dim == 0 || alpha == 0 {
            return Err(Error::InvalidParameters(
                "dimension and alpha must be positive".into(),
            ));
        }
        let alpha_big = BigInt::from(alpha);
        for g in &raw {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    found: g.dim(),
                    expected: dim,
                    gen: g.clone(),
                });
            }
            if !g.is_nonnegative() {
                return Err(Error::NegativeCoordinate(g.clone()));
            }
            let sum = g.coord_sum();
            if sum != alpha_big {
                return Err(Error::NonHomogeneous {
                    gen: g.clone(),
                    sum,
                    expected: alpha,
                });
            }
        }
        let mut seen: HashSet<IntVec> = HashSet::new();
        for g in &raw {
            if !seen.insert(g.clone()) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        let corners: Vec<IntVec> = (0..dim)
            .map(|i| IntVec::scaled_unit(dim, i, alpha))
            .collect();
        for corner in &corners {
            if !seen.contains(corner) {
                return Err(Error::MissingCorner(corner.clone()));
            }
        }
        let mut interior: Vec<IntVec> = raw
            .into_iter()
            .filter(|g| !corners.contains(g))
            .collect();
        if interior.is_empty() {
            return Err(Error::EmptyInterior);
        }
        interior.sort();
        // a non-corner generator with coordinate sum alpha has every
        // coordinate strictly below alpha
        for g in &interior {
            debug_assert!(g.all_below(alpha));
        }
        let mut warnings = Vec::new();
        let gcd = interior
            .iter()
            .flat_map(|g| g.coords())
            .fold(BigInt::from(0), |acc, c| num_integer::gcd(acc, c.clone()));
        if gcd > BigInt::from(1) {
            warnings.push(format!(
                "interior generator coordinates share the common factor {gcd}; alpha is not minimal"
            ));
        }
        Ok(SemigroupPresentation {
            dim,
            alpha,
            interior,
            warnings,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    /// The interior generators, sorted lexicographically.
    pub fn interior_generators(&self) -> &[IntVec] {
        &self.interior
    }

    pub fn codim(&self) -> u64 {
        self.interior.len() as u64
    }

    pub fn corner_generators(&self) -> Vec<IntVec> {
        (0..self.dim)
            .map(|i| IntVec::scaled_unit(self.dim, i, self.alpha))
            .collect()
    }

    /// All generators, corners first, then the sorted interior.
    pub fn generators(&self) -> Vec<IntVec> {
        let mut gens = self.corner_generators();
        gens.extend(self.interior.iter().cloned());
        gens
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

/// Number of residue classes of the generated group modulo `alpha * Z^d`;
/// equals the degree of the semigroup ring.
pub fn class_count(p: &SemigroupPresentation) -> Result<BigInt> {
    lattice_from_generators(&p.generators())?.residue_class_count(p.alpha())
}

/// Membership structure: the elements of the semigroup grouped by degree,
/// layer `n + 1` being the Minkowski sum of layer `n` with the generators.
/// Layers are materialized on demand, subject to the caps.
pub struct LayeredMembership {
    generators: Vec<IntVec>,
    alpha: u64,
    caps: Caps,
    layers: Vec<HashSet<IntVec>>,
}

impl LayeredMembership {
    pub fn new(p: &SemigroupPresentation, caps: Caps) -> Self {
        let mut zero_layer = HashSet::new();
        zero_layer.insert(IntVec::zero(p.dim()));
        LayeredMembership {
            generators: p.generators(),
            alpha: p.alpha(),
            caps,
            layers: vec![zero_layer],
        }
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn materialized_degree(&self) -> usize {
        self.layers.len() - 1
    }

    /// Materializes layers up to degree `n`.
    pub fn ensure_degree(&mut self, n: usize) -> Result<()> {
        if n > self.caps.max_degree {
            return Err(Error::BoundExceeded {
                what: format!("enumeration degree {n}"),
                cap: self.caps.max_degree,
            });
        }
        while self.layers.len() <= n {
            let last = self.layers.last().unwrap();
            let mut next = HashSet::with_capacity(last.len());
            for x in last {
                for g in &self.generators {
                    next.insert(x.add(g));
                    if next.len() > self.caps.max_layer {
                        return Err(Error::BoundExceeded {
                            what: format!("layer cardinality at degree {}", self.layers.len()),
                            cap: self.caps.max_layer,
                        });
                    }
                }
            }
            self.layers.push(next);
        }
        Ok(())
    }

    pub fn layer(&self, n: usize) -> &HashSet<IntVec> {
        &self.layers[n]
    }

    /// Membership test; materializes layers as needed.
    pub fn contains(&mut self, x: &IntVec) -> Result<bool> {
        if !x.is_nonnegative() {
            return Ok(false);
        }
        let Some(n) = integer_degree(x, self.alpha) else {
            return Ok(false);
        };
        let n = n
            .to_usize()
            .ok_or_else(|| Error::BoundExceeded {
                what: format!("membership degree {n}"),
                cap: self.caps.max_degree,
            })?;
        self.ensure_degree(n)?;
        Ok(self.layers[n].contains(x))
    }

    /// Membership against already-materialized layers only.
    pub fn is_member(&self, x: &IntVec) -> bool {
        if !x.is_nonnegative() {
            return false;
        }
        match integer_degree(x, self.alpha) {
            Some(n) => {
                let n = n as usize;
                debug_assert!(n < self.layers.len(), "layer {n} not materialized");
                self.layers.get(n).is_some_and(|l| l.contains(x))
            }
            None => false,
        }
    }
}

/// One residue class of the Apery set: its members, their componentwise
/// minimum (the shift), and the degree of the shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperyClass {
    pub members: Vec<IntVec>,
    pub shift: IntVec,
    pub shift_degree: u64,
}

impl AperyClass {
    /// The distinguished member: minimal by (degree, lexicographic order).
    pub fn representative(&self, alpha: u64) -> &IntVec {
        self.members
            .iter()
            .min_by_key(|m| (integer_degree(m, alpha).expect("member degree"), (*m).clone()))
            .expect("class is nonempty")
    }

    pub fn max_degree(&self, alpha: u64) -> u64 {
        self.members
            .iter()
            .map(|m| integer_degree(m, alpha).expect("member degree"))
            .max()
            .expect("class is nonempty")
    }
}

/// The Apery set of the semigroup relative to the corner submonoid, grouped
/// into residue classes ordered by their representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperyDecomposition {
    pub alpha: u64,
    pub dim: usize,
    pub classes: Vec<AperyClass>,
}

impl AperyDecomposition {
    pub fn class_count(&self) -> u64 {
        self.classes.len() as u64
    }

    pub fn elements(&self) -> impl Iterator<Item = &IntVec> {
        self.classes.iter().flat_map(|c| c.members.iter())
    }

    /// Maximum degree over the Apery set, i.e. the reduction number.
    pub fn reduction_number(&self) -> u64 {
        self.classes
            .iter()
            .map(|c| c.max_degree(self.alpha))
            .max()
            .unwrap_or(0)
    }
}

/// Computes the Apery set and its class decomposition.
///
/// An element of degree `n` belongs to the Apery set iff subtracting any
/// corner generator leaves the semigroup; subtracting deeper corner-submonoid
/// elements factors through a corner, so the one-step test decides the full
/// definition. Layers are scanned upward. Since every Apery element of
/// degree `n >= 1` yields one of degree `n - 1` by removing the first step
/// of a full subtraction sequence, the scan may stop at the first layer
/// contributing nothing; the class-count bound caps it in any case.
pub fn apery_set(
    p: &SemigroupPresentation,
    layers: &mut LayeredMembership,
) -> Result<AperyDecomposition> {
    let f = class_count(p)?;
    let c = BigInt::from(p.codim());
    let degree_bound = &f - &c;

    let mut elements: Vec<IntVec> = vec![IntVec::zero(p.dim())];
    let corners = p.corner_generators();
    let mut n = 1usize;
    loop {
        if BigInt::from(n) > degree_bound {
            break;
        }
        layers.ensure_degree(n)?;
        let mut found: Vec<IntVec> = layers
            .layer(n)
            .iter()
            .filter(|x| {
                corners.iter().all(|e| {
                    let y = x.sub(e);
                    !y.is_nonnegative() || !layers.layer(n - 1).contains(&y)
                })
            })
            .cloned()
            .collect();
        if found.is_empty() {
            break;
        }
        found.sort();
        elements.extend(found);
        n += 1;
    }

    // group by componentwise residue
    let mut by_residue: BTreeMap<IntVec, Vec<IntVec>> = BTreeMap::new();
    for x in elements {
        by_residue
            .entry(class_representative(&x, p.alpha()))
            .or_default()
            .push(x);
    }
    let mut classes: Vec<AperyClass> = Vec::with_capacity(by_residue.len());
    for (_, mut members) in by_residue {
        members.sort();
        let mut shift = members[0].clone();
        for m in &members[1..] {
            shift = shift.componentwise_min(m);
        }
        let shift_degree = integer_degree(&shift, p.alpha()).ok_or_else(|| {
            Error::Internal(format!("class shift {shift} has non-integer degree"))
        })?;
        for m in &members {
            let diff = m.sub(&shift);
            if !diff.is_nonnegative() || integer_degree(&diff, p.alpha()).is_none() {
                return Err(Error::Internal(format!(
                    "member {m} does not lie over shift {shift}"
                )));
            }
        }
        // the shift is attained in every coordinate, so the shifted members
        // have componentwise minimum zero
        let mut attained = members[0].sub(&shift);
        for m in &members[1..] {
            attained = attained.componentwise_min(&m.sub(&shift));
        }
        if !attained.is_zero() {
            return Err(Error::Internal(format!(
                "shift {shift} not the componentwise minimum of its class"
            )));
        }
        classes.push(AperyClass {
            members,
            shift,
            shift_degree,
        });
    }

    if BigInt::from(classes.len()) != f {
        return Err(Error::Internal(format!(
            "found {} residue classes, lattice index predicts {f}",
            classes.len()
        )));
    }

    classes.sort_by_key(|c| {
        let rep = c.representative(p.alpha());
        (
            integer_degree(rep, p.alpha()).expect("member degree"),
            rep.clone(),
        )
    });

    Ok(AperyDecomposition {
        alpha: p.alpha(),
        dim: p.dim(),
        classes,
    })
}

/// Maximum degree over the Apery set.
pub fn reduction_number(
    p: &SemigroupPresentation,
    layers: &mut LayeredMembership,
) -> Result<u64> {
    Ok(apery_set(p, layers)?.reduction_number())
}

/// A sequence of generators whose partial sums can be subtracted from the
/// base point without leaving the semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSequence {
    pub base: IntVec,
    pub steps: Vec<IntVec>,
}

impl StarSequence {
    /// The trail `base, base - b_1, base - b_1 - b_2, ..` including both ends.
    pub fn partial_remainders(&self) -> Vec<IntVec> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = self.base.clone();
        out.push(cur.clone());
        for step in &self.steps {
            cur = cur.sub(step);
            out.push(cur.clone());
        }
        out
    }
}

/// Enumerates full-length subtraction sequences of `x`: length equal to the
/// degree of `x`, every partial remainder a member, the final remainder zero.
/// Depth-first in generator order (corners first, interior sorted), cut off
/// after `limit` sequences. The zero vector has none by convention.
pub fn star_sequences(
    p: &SemigroupPresentation,
    layers: &mut LayeredMembership,
    x: &IntVec,
    limit: usize,
) -> Result<Vec<StarSequence>> {
    if !layers.contains(x)? {
        return Err(Error::NotInSemigroup(x.clone()));
    }
    let degree = integer_degree(x, p.alpha()).expect("member degree") as usize;
    let mut out = Vec::new();
    if degree == 0 || limit == 0 {
        return Ok(out);
    }
    let gens = p.generators();
    let mut steps: Vec<IntVec> = Vec::with_capacity(degree);

    fn dfs(
        cur: &IntVec,
        remaining: usize,
        gens: &[IntVec],
        layers: &LayeredMembership,
        steps: &mut Vec<IntVec>,
        out: &mut Vec<StarSequence>,
        base: &IntVec,
        limit: usize,
    ) -> Result<()> {
        if remaining == 0 {
            if !cur.is_zero() {
                return Err(Error::Internal(format!(
                    "degree-zero member {cur} is not the origin"
                )));
            }
            out.push(StarSequence {
                base: base.clone(),
                steps: steps.clone(),
            });
            return Ok(());
        }
        for g in gens {
            if out.len() >= limit {
                return Ok(());
            }
            let next = cur.sub(g);
            if next.is_nonnegative() && layers.is_member(&next) {
                steps.push(g.clone());
                dfs(&next, remaining - 1, gens, layers, steps, out, base, limit)?;
                steps.pop();
            }
        }
        Ok(())
    }

    dfs(x, degree, &gens, layers, &mut steps, &mut out, x, limit)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(coords: &[i64]) -> IntVec {
        IntVec::from_i64(coords)
    }

    fn sample_d2a4() -> SemigroupPresentation {
        SemigroupPresentation::new(
            2,
            4,
            vec![v(&[4, 0]), v(&[0, 4]), v(&[3, 1]), v(&[1, 3])],
        )
        .unwrap()
    }

    fn d3a3() -> SemigroupPresentation {
        SemigroupPresentation::new(
            3,
            3,
            vec![
                v(&[3, 0, 0]),
                v(&[0, 3, 0]),
                v(&[0, 0, 3]),
                v(&[2, 1, 0]),
                v(&[1, 0, 2]),
                v(&[0, 2, 1]),
                v(&[1, 1, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_accepts_standard_form() {
        let p = sample_d2a4();
        assert_eq!(p.codim(), 2);
        assert_eq!(p.interior_generators(), &[v(&[1, 3]), v(&[3, 1])]);
        assert!(p.warnings().is_empty());
    }

    #[test]
    fn validate_rejects_missing_corner() {
        let err = SemigroupPresentation::new(2, 4, vec![v(&[4, 0]), v(&[3, 1])]).unwrap_err();
        assert!(matches!(err, Error::MissingCorner(_)));
    }

    #[test]
    fn validate_rejects_non_homogeneous() {
        let err =
            SemigroupPresentation::new(2, 4, vec![v(&[4, 0]), v(&[0, 4]), v(&[3, 2])]).unwrap_err();
        assert!(matches!(err, Error::NonHomogeneous { .. }));
    }

    #[test]
    fn validate_rejects_duplicates_and_empty_interior() {
        let err = SemigroupPresentation::new(
            2,
            4,
            vec![v(&[4, 0]), v(&[0, 4]), v(&[3, 1]), v(&[3, 1])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateGenerator(_)));
        let err = SemigroupPresentation::new(2, 4, vec![v(&[4, 0]), v(&[0, 4])]).unwrap_err();
        assert!(matches!(err, Error::EmptyInterior));
    }

    #[test]
    fn validate_warns_on_common_factor() {
        let p = SemigroupPresentation::new(2, 4, vec![v(&[4, 0]), v(&[0, 4]), v(&[2, 2])]).unwrap();
        assert_eq!(p.warnings().len(), 1);
        assert!(p.warnings()[0].contains("common factor 2"));
    }

    #[test]
    fn class_count_examples() {
        assert_eq!(class_count(&sample_d2a4()).unwrap(), BigInt::from(4));
        // full degree-2 Veronese in three variables
        let p = SemigroupPresentation::new(
            3,
            2,
            vec![
                v(&[2, 0, 0]),
                v(&[0, 2, 0]),
                v(&[0, 0, 2]),
                v(&[1, 1, 0]),
                v(&[1, 0, 1]),
                v(&[0, 1, 1]),
            ],
        )
        .unwrap();
        assert_eq!(class_count(&p).unwrap(), BigInt::from(4));
    }

    #[test]
    fn membership_examples() {
        let p = sample_d2a4();
        let mut layers = LayeredMembership::new(&p, Caps::default());
        assert!(layers.contains(&v(&[6, 2])).unwrap());
        assert!(!layers.contains(&v(&[2, 2])).unwrap());
        assert!(layers.contains(&v(&[0, 0])).unwrap());
        assert!(!layers.contains(&v(&[-4, 4])).unwrap());
        assert!(!layers.contains(&v(&[3, 2])).unwrap());
    }

    #[test]
    fn first_layer_has_dim_plus_codim_elements() {
        let p = d3a3();
        let mut layers = LayeredMembership::new(&p, Caps::default());
        layers.ensure_degree(1).unwrap();
        assert_eq!(layers.layer(1).len(), 3 + 4);
    }

    #[test]
    fn apery_set_of_sample() {
        let p = sample_d2a4();
        let mut layers = LayeredMembership::new(&p, Caps::default());
        let apery = apery_set(&p, &mut layers).unwrap();
        let elements: Vec<IntVec> = apery.elements().cloned().collect();
        let mut sorted = elements.clone();
        sorted.sort();
        assert_eq!(
            sorted,
            vec![v(&[0, 0]), v(&[1, 3]), v(&[2, 6]), v(&[3, 1]), v(&[6, 2])]
        );
        assert_eq!(apery.classes.len(), 4);
        // class order: representative (degree, lex)
        assert_eq!(apery.classes[0].members, vec![v(&[0, 0])]);
        assert_eq!(apery.classes[1].members, vec![v(&[1, 3])]);
        assert_eq!(apery.classes[2].members, vec![v(&[3, 1])]);
        assert_eq!(apery.classes[3].members, vec![v(&[2, 6]), v(&[6, 2])]);
        assert_eq!(apery.classes[3].shift, v(&[2, 2]));
        assert_eq!(apery.classes[3].shift_degree, 1);
        assert_eq!(apery.reduction_number(), 2);
    }

    #[test]
    fn apery_set_of_small_veronese() {
        let p = SemigroupPresentation::new(2, 2, vec![v(&[2, 0]), v(&[0, 2]), v(&[1, 1])]).unwrap();
        let mut layers = LayeredMembership::new(&p, Caps::default());
        let apery = apery_set(&p, &mut layers).unwrap();
        assert_eq!(apery.classes.len(), 2);
        assert_eq!(apery.classes[0].members, vec![v(&[0, 0])]);
        assert_eq!(apery.classes[1].members, vec![v(&[1, 1])]);
    }

    #[test]
    fn apery_set_of_cubic_cone() {
        let p = d3a3();
        let mut layers = LayeredMembership::new(&p, Caps::default());
        let apery = apery_set(&p, &mut layers).unwrap();
        let elements: HashSet<IntVec> = apery.elements().cloned().collect();
        assert!(elements.contains(&v(&[4, 2, 0])));
        assert!(apery
            .classes
            .iter()
            .any(|c| c.members == vec![v(&[2, 2, 2])]));
    }

    #[test]
    fn degree_cap_refuses() {
        let p = sample_d2a4();
        let mut layers = LayeredMembership::new(
            &p,
            Caps {
                max_degree: 1,
                ..Caps::default()
            },
        );
        assert!(matches!(
            apery_set(&p, &mut layers),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn star_sequences_of_sample() {
        let p = sample_d2a4();
        let mut layers = LayeredMembership::new(&p, Caps::default());
        let seqs = star_sequences(&p, &mut layers, &v(&[6, 2]), 100).unwrap();
        assert_eq!(seqs.len(), 1);
        assert_eq!(seqs[0].steps, vec![v(&[3, 1]), v(&[3, 1])]);

        let seqs = star_sequences(&p, &mut layers, &v(&[3, 1]), 100).unwrap();
        assert_eq!(seqs.len(), 1);
        assert_eq!(seqs[0].steps, vec![v(&[3, 1])]);

        let seqs = star_sequences(&p, &mut layers, &v(&[0, 0]), 100).unwrap();
        assert!(seqs.is_empty());

        assert!(matches!(
            star_sequences(&p, &mut layers, &v(&[2, 2]), 100),
            Err(Error::NotInSemigroup(_))
        ));
    }

    #[test]
    fn star_sequences_exist_for_every_nonzero_member() {
        let p = d3a3();
        let mut layers = LayeredMembership::new(&p, Caps::default());
        layers.ensure_degree(3).unwrap();
        let members: Vec<IntVec> = (1..=3).flat_map(|n| layers.layer(n).iter().cloned()).collect();
        for x in members {
            let seqs = star_sequences(&p, &mut layers, &x, 5).unwrap();
            assert!(!seqs.is_empty(), "no sequence for {x}");
            for s in &seqs {
                assert_eq!(s.partial_remainders().last().unwrap(), &IntVec::zero(3));
            }
        }
    }
}
