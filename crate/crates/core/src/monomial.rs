//! Monomial ideals in a standard graded polynomial ring: minimal generators,
//! support data, height, and the lattice of least common multiples.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntVec;

/// A monomial `y^u` given by its exponent vector `u >= 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    exponents: IntVec,
}

impl Monomial {
    pub fn new(exponents: IntVec) -> Result<Self> {
        if !exponents.is_nonnegative() {
            return Err(Error::NegativeCoordinate(exponents));
        }
        Ok(Monomial { exponents })
    }

    pub fn from_u64(exponents: &[u64]) -> Self {
        Monomial {
            exponents: IntVec::new(exponents.iter().map(|&e| BigInt::from(e)).collect()),
        }
    }

    /// The monomial `1`.
    pub fn one(dim: usize) -> Self {
        Monomial {
            exponents: IntVec::zero(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.exponents.dim()
    }

    pub fn exponents(&self) -> &IntVec {
        &self.exponents
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_zero()
    }

    pub fn total_degree(&self) -> BigInt {
        self.exponents.coord_sum()
    }

    pub fn total_degree_u64(&self) -> u64 {
        self.total_degree()
            .to_u64()
            .expect("monomial degree exceeds u64")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .coords()
            .iter()
            .zip(other.exponents.coords())
            .all(|(a, b)| a <= b)
    }

    /// Divisibility against a raw exponent vector (which may be negative,
    /// in which case nothing divides it).
    pub fn divides_exponents(&self, u: &IntVec) -> bool {
        self.exponents
            .coords()
            .iter()
            .zip(u.coords())
            .all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: IntVec::new(
                self.exponents
                    .coords()
                    .iter()
                    .zip(other.exponents.coords())
                    .map(|(a, b)| a.max(b).clone())
                    .collect(),
            ),
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.all_at_most(1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, e) in self.exponents.coords().iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e.is_one() {
                write!(f, "y{}", i + 1)?;
            } else {
                write!(f, "y{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A monomial ideal held by its unique minimal set of monomial generators.
///
/// The unit ideal is represented by the single generator `1`; an empty
/// generator list denotes the zero ideal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Prunes generators divisible by another and deduplicates; detects the
    /// unit ideal. Every monomial ideal has a unique minimal generating set,
    /// so the result is canonical.
    pub fn minimalize(dim: usize, gens: Vec<Monomial>) -> MonomialIdeal {
        let mut distinct: Vec<Monomial> = Vec::new();
        for g in gens {
            debug_assert_eq!(g.dim(), dim);
            if !distinct.contains(&g) {
                distinct.push(g);
            }
        }
        let mut minimal: Vec<Monomial> = Vec::new();
        for g in &distinct {
            if distinct.iter().any(|h| h != g && h.divides(g)) {
                continue;
            }
            minimal.push(g.clone());
        }
        // descending lexicographic order puts y1 before y2
        minimal.sort_by(|a, b| b.cmp(a));
        MonomialIdeal { dim, gens: minimal }
    }

    pub fn from_exponent_rows(dim: usize, rows: &[Vec<u64>]) -> MonomialIdeal {
        MonomialIdeal::minimalize(dim, rows.iter().map(|r| Monomial::from_u64(r)).collect())
    }

    pub fn unit(dim: usize) -> MonomialIdeal {
        MonomialIdeal {
            dim,
            gens: vec![Monomial::one(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn min_gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit() && !self.is_zero()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    /// True when `y^u` lies in the ideal, i.e. some minimal generator divides it.
    /// Exponent vectors with a negative entry denote `0` and are never members.
    pub fn contains_exponents(&self, u: &IntVec) -> bool {
        if !u.is_nonnegative() {
            return false;
        }
        self.gens.iter().any(|g| g.divides_exponents(u))
    }

    pub fn lcm_of_gens(&self) -> Monomial {
        let mut acc = Monomial::one(self.dim);
        for g in &self.gens {
            acc = acc.lcm(g);
        }
        acc
    }

    /// Indices of the variables occurring in the minimal generators, together
    /// with the total degree of their least common multiple.
    pub fn supp_and_var(&self) -> (BTreeSet<usize>, u64) {
        let lcm = self.lcm_of_gens();
        let supp: BTreeSet<usize> = lcm
            .exponents()
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, _)| i)
            .collect();
        (supp, lcm.total_degree_u64())
    }

    /// Height of the ideal, equal to the height of its radical: the smallest
    /// number of variables hitting the support of every minimal generator.
    /// Found by exhaustive search over index subsets of increasing size.
    pub fn height(&self) -> Result<u64> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        if self.is_zero() {
            return Ok(0);
        }
        if self.dim > 64 {
            return Err(Error::Internal(
                "height search limited to 64 variables".into(),
            ));
        }
        let supports: Vec<u64> = self
            .gens
            .iter()
            .map(|g| {
                let mut mask = 0u64;
                for (i, e) in g.exponents().coords().iter().enumerate() {
                    if !e.is_zero() {
                        mask |= 1 << i;
                    }
                }
                mask
            })
            .collect();
        let universe: Vec<usize> = {
            let mut u = 0u64;
            for m in &supports {
                u |= m;
            }
            (0..self.dim).filter(|i| u >> i & 1 == 1).collect()
        };
        for k in 1..=universe.len() {
            let mut found = None;
            for_each_subset(&universe, k, &mut |mask| {
                if found.is_none() && supports.iter().all(|s| s & mask != 0) {
                    found = Some(mask);
                }
            });
            if found.is_some() {
                return Ok(k as u64);
            }
        }
        Err(Error::Internal("no hitting set found".into()))
    }

    /// All distinct least common multiples of nonempty subsets of the minimal
    /// generators, computed as the closure of the generator set under pairwise
    /// lcm (joins are associative, so the closure equals the full subset set
    /// without enumerating `2^g` subsets). Sorted for determinism.
    pub fn lcm_lattice(&self, cap: usize) -> Result<Vec<IntVec>> {
        let mut seen: BTreeSet<IntVec> = BTreeSet::new();
        let mut frontier: Vec<Monomial> = Vec::new();
        for g in &self.gens {
            if seen.insert(g.exponents().clone()) {
                frontier.push(g.clone());
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                for g in &self.gens {
                    let j = f.lcm(g);
                    if seen.insert(j.exponents().clone()) {
                        if seen.len() > cap {
                            return Err(Error::BoundExceeded {
                                what: "lcm lattice size".into(),
                                cap,
                            });
                        }
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        Ok(seen.into_iter().collect())
    }
}

/// Calls `f` with the bitmask of every `k`-element subset of `items`.
fn for_each_subset(items: &[usize], k: usize, f: &mut impl FnMut(u64)) {
    fn rec(items: &[usize], k: usize, start: usize, mask: u64, f: &mut impl FnMut(u64)) {
        if k == 0 {
            f(mask);
            return;
        }
        for i in start..=items.len().saturating_sub(k) {
            rec(items, k - 1, i + 1, mask | (1 << items[i]), f);
        }
    }
    rec(items, k, 0, 0, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(dim: usize, rows: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_exponent_rows(dim, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn minimalize_prunes_divisible_generators() {
        let i = ideal(2, &[&[1, 0], &[1, 1]]);
        assert_eq!(i.min_gens(), &[Monomial::from_u64(&[1, 0])]);
    }

    #[test]
    fn minimalize_detects_unit() {
        let i = ideal(2, &[&[0, 0], &[0, 1]]);
        assert!(i.is_unit());
        assert_eq!(i.min_gens(), &[Monomial::one(2)]);
    }

    #[test]
    fn minimalize_keeps_incomparable_generators() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(i.min_gens().len(), 2);
        assert!(i.is_proper());
    }

    #[test]
    fn supp_and_var_examples() {
        // (y1*y2, y2*y5*y6) in six variables
        let i = ideal(6, &[&[1, 1, 0, 0, 0, 0], &[0, 1, 0, 0, 1, 1]]);
        let (supp, var) = i.supp_and_var();
        assert_eq!(supp.into_iter().collect::<Vec<_>>(), vec![0, 1, 4, 5]);
        assert_eq!(var, 4);

        let (supp, var) = ideal(2, &[&[1, 0], &[0, 1]]).supp_and_var();
        assert_eq!(supp.len(), 2);
        assert_eq!(var, 2);

        let (supp, var) = MonomialIdeal::unit(3).supp_and_var();
        assert!(supp.is_empty());
        assert_eq!(var, 0);
    }

    #[test]
    fn height_examples() {
        assert_eq!(ideal(2, &[&[1, 0], &[0, 1]]).height().unwrap(), 2);
        assert_eq!(
            ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]).height().unwrap(),
            2
        );
        // the triangle (y1y2, y1y3, y2y3)
        assert_eq!(
            ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])
                .height()
                .unwrap(),
            2
        );
        assert!(matches!(
            MonomialIdeal::unit(2).height(),
            Err(Error::UnitIdeal)
        ));
    }

    #[test]
    fn lcm_lattice_matches_subset_enumeration() {
        let i = ideal(3, &[&[2, 1, 0], &[0, 1, 1], &[1, 0, 2]]);
        let lattice = i.lcm_lattice(1 << 20).unwrap();
        // brute force over all nonempty subsets
        let gens = i.min_gens();
        let mut expected = BTreeSet::new();
        for mask in 1u32..(1 << gens.len()) {
            let mut acc: Option<Monomial> = None;
            for (j, g) in gens.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    acc = Some(match acc {
                        None => g.clone(),
                        Some(a) => a.lcm(g),
                    });
                }
            }
            expected.insert(acc.unwrap().exponents().clone());
        }
        assert_eq!(lattice, expected.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn monomial_display() {
        assert_eq!(Monomial::from_u64(&[1, 0, 2]).to_string(), "y1*y3^2");
        assert_eq!(Monomial::one(3).to_string(), "1");
    }
}
