//! Exact integer vectors, the degree grading, residues modulo `alpha * Z^d`,
//! and Hermite-normal-form bases of the group generated by a set of vectors.
//!
//! Everything here is arbitrary precision; there is no silent overflow.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A point of `Z^d` with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec {
    coords: Vec<BigInt>,
}

impl IntVec {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntVec { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        IntVec {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        IntVec {
            coords: vec![BigInt::zero(); dim],
        }
    }

    /// `s * e_i` in dimension `dim` (zero-based index).
    pub fn scaled_unit(dim: usize, i: usize, s: u64) -> Self {
        let mut coords = vec![BigInt::zero(); dim];
        coords[i] = BigInt::from(s);
        IntVec { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }

    pub fn coord_sum(&self) -> BigInt {
        self.coords.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &IntVec) -> IntVec {
        IntVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn componentwise_min(&self, other: &IntVec) -> IntVec {
        IntVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        }
    }

    /// True when every coordinate is `<= bound` (the closed box test).
    pub fn all_at_most(&self, bound: u64) -> bool {
        let b = BigInt::from(bound);
        self.coords.iter().all(|c| *c <= b)
    }

    /// True when every coordinate is `< bound` (the half-open cell test).
    pub fn all_below(&self, bound: u64) -> bool {
        let b = BigInt::from(bound);
        self.coords.iter().all(|c| *c < b)
    }

    pub fn to_i64_vec(&self) -> Result<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| {
                c.to_i64()
                    .ok_or_else(|| Error::Internal(format!("coordinate {c} exceeds i64")))
            })
            .collect()
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coordinate sum divided by `alpha`, as an exact rational.
pub fn degree(x: &IntVec, alpha: u64) -> BigRational {
    BigRational::new(x.coord_sum(), BigInt::from(alpha))
}

/// The degree when it is a nonnegative integer, which is the case for every
/// member of a homogeneous semigroup in standard form.
pub fn integer_degree(x: &IntVec, alpha: u64) -> Option<u64> {
    let sum = x.coord_sum();
    if sum.is_negative() {
        return None;
    }
    let (q, r) = sum.div_rem(&BigInt::from(alpha));
    if r.is_zero() {
        q.to_u64()
    } else {
        None
    }
}

/// Componentwise nonnegative residue of `x` modulo `alpha`; the result lies in
/// the half-open cell and differs from `x` by an element of `alpha * Z^d`.
pub fn class_representative(x: &IntVec, alpha: u64) -> IntVec {
    let a = BigInt::from(alpha);
    IntVec::new(x.coords().iter().map(|c| c.mod_floor(&a)).collect())
}

/// Full-rank sublattice of `Z^d` presented by a lower-triangular basis with
/// positive diagonal (column-style Hermite normal form).
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    /// `cols[j]` is the j-th basis column; `cols[j][i] == 0` for `i < j`.
    cols: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_columns(&self) -> &[Vec<BigInt>] {
        &self.cols
    }

    /// Product of the diagonal, i.e. the index of the lattice in `Z^d`.
    pub fn determinant(&self) -> BigInt {
        let mut det = BigInt::from(1);
        for (j, col) in self.cols.iter().enumerate() {
            det *= &col[j];
        }
        det
    }

    /// Exact membership test by forward substitution along the triangular basis.
    pub fn contains(&self, v: &IntVec) -> bool {
        if v.dim() != self.dim {
            return false;
        }
        let mut rem: Vec<BigInt> = v.coords().to_vec();
        for i in 0..self.dim {
            let (q, r) = rem[i].div_rem(&self.cols[i][i]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for row in i..self.dim {
                    let t = &self.cols[i][row] * &q;
                    rem[row] -= t;
                }
            }
        }
        rem.iter().all(|c| c.is_zero())
    }

    /// Number of residue classes of this lattice modulo `alpha * Z^d`,
    /// i.e. `alpha^d / det`. Errors if `alpha * Z^d` is not contained.
    pub fn residue_class_count(&self, alpha: u64) -> Result<BigInt> {
        for i in 0..self.dim {
            let e = IntVec::scaled_unit(self.dim, i, alpha);
            if !self.contains(&e) {
                return Err(Error::Internal(format!(
                    "alpha * Z^d not contained in lattice: {e} missing"
                )));
            }
        }
        let mut pow = BigInt::from(1);
        for _ in 0..self.dim {
            pow *= BigInt::from(alpha);
        }
        let (q, r) = pow.div_rem(&self.determinant());
        if !r.is_zero() {
            return Err(Error::Internal(
                "alpha^d not divisible by lattice index".into(),
            ));
        }
        Ok(q)
    }
}

/// Hermite normal form of the integer column span of `gens`.
///
/// The generators must span a full-rank sublattice; in a validated
/// presentation this is guaranteed by the corner generators.
pub fn lattice_from_generators(gens: &[IntVec]) -> Result<Lattice> {
    let dim = match gens.first() {
        Some(g) => g.dim(),
        None => return Err(Error::RankDeficient),
    };
    let mut cols: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords().to_vec()).collect();

    for row in 0..dim {
        // Euclidean column reduction: shrink entries of this row (among the
        // not-yet-placed columns) until one pivot remains.
        loop {
            let piv = (row..cols.len())
                .filter(|&j| !cols[j][row].is_zero())
                .min_by_key(|&j| cols[j][row].abs());
            let Some(piv) = piv else {
                return Err(Error::RankDeficient);
            };
            cols.swap(row, piv);
            let mut clean = true;
            for j in row + 1..cols.len() {
                if cols[j][row].is_zero() {
                    continue;
                }
                let q = &cols[j][row] / &cols[row][row];
                if !q.is_zero() {
                    for i in row..dim {
                        let t = &cols[row][i] * &q;
                        cols[j][i] -= t;
                    }
                }
                if !cols[j][row].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if cols[row][row].is_negative() {
            for c in cols[row].iter_mut() {
                *c = -&*c;
            }
        }
    }
    cols.truncate(dim);

    // Normalize below-diagonal entries into [0, diagonal).
    for i in 0..dim {
        for j in 0..i {
            let r = cols[j][i].mod_floor(&cols[i][i]);
            let q = (&cols[j][i] - &r) / &cols[i][i];
            if !q.is_zero() {
                for row in i..dim {
                    let t = &cols[i][row] * &q;
                    cols[j][row] -= t;
                }
            }
        }
    }

    Ok(Lattice { dim, cols })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(coords: &[i64]) -> IntVec {
        IntVec::from_i64(coords)
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&v(&[3, 1]), 4), BigRational::from(BigInt::from(1)));
        assert_eq!(degree(&v(&[0, 0, 0]), 7), BigRational::from(BigInt::from(0)));
        assert_eq!(degree(&v(&[6, 2]), 4), BigRational::from(BigInt::from(2)));
        assert_eq!(
            degree(&v(&[3, 2]), 4),
            BigRational::new(BigInt::from(5), BigInt::from(4))
        );
    }

    #[test]
    fn integer_degree_detects_non_integers() {
        assert_eq!(integer_degree(&v(&[6, 2]), 4), Some(2));
        assert_eq!(integer_degree(&v(&[3, 2]), 4), None);
        assert_eq!(integer_degree(&v(&[-4, 0]), 4), None);
    }

    #[test]
    fn representative_examples() {
        assert_eq!(class_representative(&v(&[6, 2]), 4), v(&[2, 2]));
        assert_eq!(class_representative(&v(&[3, 1]), 4), v(&[3, 1]));
        assert_eq!(class_representative(&v(&[2, 6]), 4), v(&[2, 2]));
        // negative inputs reduce into the cell as well
        assert_eq!(class_representative(&v(&[-1, 5]), 4), v(&[3, 1]));
    }

    #[test]
    fn hnf_determinants() {
        let l = lattice_from_generators(&[v(&[4, 0]), v(&[0, 4]), v(&[3, 1]), v(&[1, 3])]).unwrap();
        assert_eq!(l.determinant(), BigInt::from(4));
        assert_eq!(l.residue_class_count(4).unwrap(), BigInt::from(4));

        let l = lattice_from_generators(&[v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert_eq!(l.determinant(), BigInt::from(4));
        assert_eq!(l.basis_columns()[0], vec![BigInt::from(2), BigInt::from(0)]);
        assert_eq!(l.basis_columns()[1], vec![BigInt::from(0), BigInt::from(2)]);

        let l = lattice_from_generators(&[v(&[2, 0]), v(&[0, 2]), v(&[1, 1])]).unwrap();
        assert_eq!(l.determinant(), BigInt::from(2));
        assert_eq!(l.residue_class_count(2).unwrap(), BigInt::from(2));
    }

    #[test]
    fn corners_only_lattice_has_one_class() {
        let l =
            lattice_from_generators(&[v(&[3, 0, 0]), v(&[0, 3, 0]), v(&[0, 0, 3])]).unwrap();
        assert_eq!(l.residue_class_count(3).unwrap(), BigInt::from(1));
    }

    #[test]
    fn rank_deficient_is_an_error() {
        assert!(matches!(
            lattice_from_generators(&[v(&[1, 1]), v(&[2, 2])]),
            Err(Error::RankDeficient)
        ));
    }

    #[test]
    fn lattice_membership() {
        let l = lattice_from_generators(&[v(&[4, 0]), v(&[0, 4]), v(&[3, 1]), v(&[1, 3])]).unwrap();
        assert!(l.contains(&v(&[3, 1])));
        assert!(l.contains(&v(&[-5, 5])));
        assert!(!l.contains(&v(&[1, 0])));
        assert!(l.contains(&v(&[4, 0])));
    }
}
