//! Closed-form invariants of full Veronese semigroups: the generator set of
//! all degree-`alpha` exponent vectors, regularity, degree and codimension,
//! and the layer-saturation criterion tying the reduction number to an
//! arithmetic inequality.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::IntVec;
use crate::semigroup::SemigroupPresentation;
use crate::Caps;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VeroneseParams {
    pub dim: usize,
    pub alpha: u64,
}

impl VeroneseParams {
    pub fn new(dim: usize, alpha: u64) -> Result<Self> {
        if dim == 0 || alpha == 0 {
            return Err(Error::InvalidParameters(
                "dimension and alpha must be positive".into(),
            ));
        }
        Ok(VeroneseParams { dim, alpha })
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Number of generators, `C(alpha + d - 1, d - 1)`.
pub fn generator_count(p: &VeroneseParams) -> BigInt {
    binomial(p.alpha + p.dim as u64 - 1, p.dim as u64 - 1)
}

/// All compositions of `alpha` into `dim` nonnegative parts, in descending
/// lexicographic order.
pub fn generators(p: &VeroneseParams) -> Vec<IntVec> {
    fn rec(remaining: u64, parts: usize, prefix: &mut Vec<i64>, out: &mut Vec<IntVec>) {
        if parts == 1 {
            prefix.push(remaining as i64);
            out.push(IntVec::from_i64(prefix));
            prefix.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            prefix.push(first as i64);
            rec(remaining - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(p.alpha, p.dim, &mut Vec::new(), &mut out);
    debug_assert_eq!(BigInt::from(out.len()), generator_count(p));
    out
}

/// `floor(d - d / alpha)`, exactly.
pub fn regularity(p: &VeroneseParams) -> u64 {
    // d - d/alpha = d (alpha - 1) / alpha
    let num = p.dim as u64 * (p.alpha - 1);
    num / p.alpha
}

/// Exact degree `alpha^(d-1)` and codimension `C(alpha + d - 1, d - 1) - d`.
pub fn deg_codim(p: &VeroneseParams) -> Result<(BigInt, BigInt)> {
    if p.dim < 2 || p.alpha < 2 {
        return Err(Error::DegenerateParameters);
    }
    let mut deg = BigInt::from(1);
    for _ in 0..p.dim - 1 {
        deg *= BigInt::from(p.alpha);
    }
    let codim = generator_count(p) - BigInt::from(p.dim as u64);
    Ok((deg, codim))
}

/// Outcome of the saturation test at shift `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SaturationOutcome {
    pub holds: bool,
    /// Whether the literal Minkowski-sum set equality was evaluated, or only
    /// the equivalent arithmetic inequality (above the cap).
    pub literal_checked: bool,
}

/// The `n`-fold Minkowski sum of the generator set (`n = 0` gives the origin).
pub fn minkowski_layer(p: &VeroneseParams, n: u64) -> HashSet<IntVec> {
    let gens = generators(p);
    let mut layer: HashSet<IntVec> = HashSet::new();
    layer.insert(IntVec::zero(p.dim));
    for _ in 0..n {
        let mut next = HashSet::new();
        for x in &layer {
            for g in &gens {
                next.insert(x.add(g));
            }
        }
        layer = next;
    }
    layer
}

/// Tests whether adding one generator layer to the `r`-fold sum, shifted by
/// the corners, already fills the `(r+1)`-fold sum.
///
/// Evaluates the arithmetic inequality `(r+1) * alpha > d * (alpha-1)` and,
/// when the expected layer size stays under `cap`, also the literal set
/// equality; the two must agree.
pub fn saturation_check(p: &VeroneseParams, r: u64, cap: usize) -> Result<SaturationOutcome> {
    let inequality = (r + 1) as u128 * p.alpha as u128 > p.dim as u128 * (p.alpha as u128 - 1);

    let expected = binomial((r + 1) * p.alpha + p.dim as u64 - 1, p.dim as u64 - 1);
    if expected.to_usize().is_none_or(|s| s > cap) {
        return Ok(SaturationOutcome {
            holds: inequality,
            literal_checked: false,
        });
    }

    let layer_r = minkowski_layer(p, r);
    let layer_r1 = minkowski_layer(p, r + 1);
    let corners: Vec<IntVec> = (0..p.dim)
        .map(|i| IntVec::scaled_unit(p.dim, i, p.alpha))
        .collect();
    let mut shifted: HashSet<IntVec> = HashSet::new();
    for x in &layer_r {
        for e in &corners {
            shifted.insert(x.add(e));
        }
    }
    let equal = shifted == layer_r1;
    if equal != inequality {
        return Err(Error::Internal(format!(
            "saturation criterion mismatch at r = {r}: inequality {inequality}, sets {equal}"
        )));
    }
    Ok(SaturationOutcome {
        holds: equal,
        literal_checked: true,
    })
}

/// The standard-form presentation of the full Veronese semigroup, guarded by
/// the layer cap since the generator count grows quickly.
pub fn presentation(p: &VeroneseParams, caps: &Caps) -> Result<SemigroupPresentation> {
    let count = generator_count(p);
    if count.to_usize().is_none_or(|c| c > caps.max_layer) {
        return Err(Error::BoundExceeded {
            what: format!("Veronese generator count {count}"),
            cap: caps.max_layer,
        });
    }
    SemigroupPresentation::new(p.dim, p.alpha, generators(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(dim: usize, alpha: u64) -> VeroneseParams {
        VeroneseParams::new(dim, alpha).unwrap()
    }

    #[test]
    fn generators_examples() {
        let g = generators(&params(2, 2));
        assert_eq!(
            g,
            vec![
                IntVec::from_i64(&[2, 0]),
                IntVec::from_i64(&[1, 1]),
                IntVec::from_i64(&[0, 2])
            ]
        );
        assert_eq!(generators(&params(3, 2)).len(), 6);
        assert_eq!(generators(&params(1, 5)), vec![IntVec::from_i64(&[5])]);
    }

    #[test]
    fn regularity_closed_form() {
        assert_eq!(regularity(&params(20, 2)), 10);
        // alpha >= d gives d - 1
        assert_eq!(regularity(&params(3, 3)), 2);
        assert_eq!(regularity(&params(3, 7)), 2);
        assert_eq!(regularity(&params(4, 9)), 3);
        // two variables give 1 for every alpha >= 2
        for alpha in 2..=9 {
            assert_eq!(regularity(&params(2, alpha)), 1);
        }
        assert_eq!(regularity(&params(5, 1)), 0);
    }

    #[test]
    fn deg_codim_examples() {
        let (deg, codim) = deg_codim(&params(20, 2)).unwrap();
        assert_eq!(deg, BigInt::from(524288u64));
        assert_eq!(&deg - &codim, BigInt::from(524098u64));

        let (deg, codim) = deg_codim(&params(2, 7)).unwrap();
        assert_eq!(deg, BigInt::from(7));
        assert_eq!(&deg - &codim, BigInt::from(1));

        let (deg, codim) = deg_codim(&params(3, 2)).unwrap();
        assert_eq!(deg, BigInt::from(4));
        assert_eq!(codim, BigInt::from(3));

        assert!(matches!(
            deg_codim(&params(1, 9)),
            Err(Error::DegenerateParameters)
        ));
        assert!(matches!(
            deg_codim(&params(9, 1)),
            Err(Error::DegenerateParameters)
        ));
    }

    #[test]
    fn saturation_examples() {
        let out = saturation_check(&params(2, 4), 1, 1 << 16).unwrap();
        assert!(out.holds && out.literal_checked);

        let out = saturation_check(&params(3, 3), 1, 1 << 16).unwrap();
        assert!(!out.holds && out.literal_checked);

        let out = saturation_check(&params(1, 6), 0, 1 << 16).unwrap();
        assert!(out.holds);

        // above the cap only the inequality side runs
        let out = saturation_check(&params(10, 3), 5, 16).unwrap();
        assert!(!out.literal_checked);
    }

    #[test]
    fn smallest_saturated_shift_is_the_regularity() {
        for dim in 1..=4 {
            for alpha in 1..=4 {
                let p = params(dim, alpha);
                let min_r = (0..)
                    .find(|&r| saturation_check(&p, r, 1 << 16).unwrap().holds)
                    .unwrap();
                assert_eq!(min_r, regularity(&p), "dim {dim} alpha {alpha}");
            }
        }
    }

    #[test]
    fn minkowski_layers_fill_the_degree_slice() {
        for (dim, alpha) in [(2usize, 2u64), (3, 2), (2, 3), (3, 3)] {
            let p = params(dim, alpha);
            for n in 0..=3u64 {
                let layer = minkowski_layer(&p, n);
                let expected = binomial(n * alpha + dim as u64 - 1, dim as u64 - 1);
                assert_eq!(BigInt::from(layer.len()), expected);
                for x in &layer {
                    assert_eq!(x.coord_sum(), BigInt::from(n * alpha));
                }
            }
        }
    }

    #[test]
    fn presentation_respects_caps() {
        let caps = Caps::default();
        let p = presentation(&params(3, 2), &caps).unwrap();
        assert_eq!(p.codim(), 3);
        let tiny = Caps {
            max_layer: 4,
            ..Caps::default()
        };
        assert!(matches!(
            presentation(&params(4, 3), &tiny),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
