//! Multigraded Betti numbers of monomial ideals via reduced simplicial
//! homology of upper Koszul complexes at lcm-lattice multidegrees, and the
//! Castelnuovo-Mumford regularity derived from them.
//!
//! Index convention, fixed once: the Betti number at homological index `i`
//! and multidegree `b` is the rank of the reduced homology in slot `i - 1`
//! of the upper Koszul complex at `b`, where the reduced homology of the
//! void complex vanishes and the complex consisting of the empty face alone
//! has one-dimensional homology in slot `-1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntVec;
use crate::monomial::MonomialIdeal;
use crate::snf::{is_prime_u64, rank_mod_p, smith_normal_form};

/// Coefficient field for homology ranks.
///
/// The rational mode computes integer Smith normal forms once and flags
/// torsion, which covers every characteristic at once when no torsion
/// appears; the prime mode reduces boundary matrices modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffField {
    Rational,
    Prime(u64),
}

impl CoeffField {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(CoeffField::Prime(p))
        } else {
            Err(Error::InvalidParameters(format!("{p} is not prime")))
        }
    }
}

/// Abstract simplicial complex on vertices `{0, .., vertex_count-1}`,
/// faces stored as sorted bitmasks. No faces at all is the void complex,
/// distinct from the complex `{empty face}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: Vec<u64>,
}

impl SimplicialComplex {
    pub fn new(vertex_count: usize, mut faces: Vec<u64>) -> Self {
        faces.sort_unstable();
        faces.dedup();
        SimplicialComplex {
            vertex_count,
            faces,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains_face(&self, mask: u64) -> bool {
        self.faces.binary_search(&mask).is_ok()
    }

    /// Checks downward closure; a failure means the face predicate used to
    /// build the complex was not monotone.
    pub fn assert_closed(&self) -> Result<()> {
        for &face in &self.faces {
            let mut rest = face;
            while rest != 0 {
                let v = rest & rest.wrapping_neg();
                rest ^= v;
                if !self.contains_face(face ^ v) {
                    return Err(Error::Internal(format!(
                        "complex not closed under subsets at face {face:#b}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Faces grouped by cardinality; index `k` holds the chains in slot `k - 1`.
    fn faces_by_cardinality(&self) -> Vec<Vec<u64>> {
        let mut by_card = vec![Vec::new(); self.vertex_count + 2];
        for &face in &self.faces {
            by_card[face.count_ones() as usize].push(face);
        }
        by_card
    }
}

/// The upper Koszul complex of `ideal` at multidegree `b`: the subsets
/// `s` of the vertex set such that `y^(b - s)` still lies in the ideal.
pub fn upper_koszul_complex(ideal: &MonomialIdeal, b: &IntVec) -> Result<SimplicialComplex> {
    let dim = ideal.dim();
    if b.dim() != dim {
        return Err(Error::DimensionMismatch {
            gen: b.clone(),
            found: b.dim(),
            expected: dim,
        });
    }
    if dim > 64 {
        return Err(Error::BoundExceeded {
            what: format!("upper Koszul complex in {dim} variables"),
            cap: 64,
        });
    }
    let positive: Vec<usize> = (0..dim)
        .filter(|&i| b.coord(i) > &BigInt::zero())
        .collect();
    if positive.len() > 25 {
        return Err(Error::BoundExceeded {
            what: format!("upper Koszul complex on {} vertices", positive.len()),
            cap: 25,
        });
    }
    let mut faces = Vec::new();
    for choice in 0u64..(1 << positive.len()) {
        let mut mask = 0u64;
        let mut shifted = b.clone();
        for (bit, &v) in positive.iter().enumerate() {
            if choice >> bit & 1 == 1 {
                mask |= 1 << v;
                shifted = shifted.sub(&IntVec::scaled_unit(dim, v, 1));
            }
        }
        if ideal.contains_exponents(&shifted) {
            faces.push(mask);
        }
    }
    Ok(SimplicialComplex::new(dim, faces))
}

/// One Betti table entry: the rank over the chosen field, plus a torsion
/// flag (rational mode only) recording that integral homology has torsion
/// at or next to this slot, so the rank may differ in finite characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiEntry {
    pub rank: u64,
    pub torsion: bool,
}

/// Multigraded Betti numbers keyed by (homological index, multidegree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub field: CoeffField,
    entries: BTreeMap<(usize, IntVec), BettiEntry>,
}

impl BettiTable {
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, IntVec), &BettiEntry)> {
        self.entries.iter()
    }

    pub fn rank(&self, index: usize, multidegree: &IntVec) -> u64 {
        self.entries
            .get(&(index, multidegree.clone()))
            .map_or(0, |e| e.rank)
    }

    pub fn has_torsion(&self) -> bool {
        self.entries.values().any(|e| e.torsion)
    }

    /// `max { totaldeg(b) - i }` over the nonzero entries; 0 for an empty table.
    pub fn regularity(&self) -> u64 {
        self.entries
            .iter()
            .filter(|(_, e)| e.rank > 0)
            .map(|((i, b), _)| {
                let deg = b.coord_sum().to_u64().expect("multidegree exceeds u64");
                deg - *i as u64
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((i, b), e) in &self.entries {
            writeln!(
                f,
                "beta_{{{i},{b}}} = {}{}",
                e.rank,
                if e.torsion { " (torsion)" } else { "" }
            )?;
        }
        Ok(())
    }
}

/// Reduced homology ranks of `cx`, indexed so that slot `i` of the result is
/// the Betti number convention above (reduced homology in dimension `i - 1`).
fn reduced_homology(cx: &SimplicialComplex, field: CoeffField) -> Vec<BettiEntry> {
    let by_card = cx.faces_by_cardinality();
    let levels = by_card.len();
    // boundary[k]: chains of cardinality k -> cardinality k-1
    let mut rank = vec![0usize; levels + 1];
    let mut torsion = vec![false; levels + 1];
    for k in 1..levels {
        if by_card[k].is_empty() || by_card[k - 1].is_empty() {
            continue;
        }
        let matrix = boundary_matrix(&by_card[k - 1], &by_card[k]);
        match field {
            CoeffField::Rational => {
                let snf = smith_normal_form(matrix);
                rank[k] = snf.rank;
                torsion[k] = snf.has_nontrivial_factor();
            }
            CoeffField::Prime(p) => {
                rank[k] = rank_mod_p(&matrix, p);
            }
        }
    }
    (0..levels)
        .map(|slot| BettiEntry {
            rank: (by_card[slot].len() - rank[slot] - rank[slot + 1]) as u64,
            torsion: torsion[slot + 1],
        })
        .collect()
}

/// Signed simplicial boundary from chains `cols` (cardinality k) to `rows`
/// (cardinality k-1).
fn boundary_matrix(rows: &[u64], cols: &[u64]) -> Vec<Vec<BigInt>> {
    let row_index: BTreeMap<u64, usize> = rows.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut matrix = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
    for (j, &face) in cols.iter().enumerate() {
        let mut sign = BigInt::one();
        let mut rest = face;
        while rest != 0 {
            let v = rest & rest.wrapping_neg();
            rest ^= v;
            let target = face ^ v;
            if let Some(&i) = row_index.get(&target) {
                matrix[i][j] = sign.clone();
            }
            sign = -sign;
        }
    }
    matrix
}

/// Assembles the Betti table of `ideal` by computing reduced homology of the
/// upper Koszul complex at every lcm-lattice multidegree. Entries with zero
/// rank are kept only when they carry a torsion flag.
pub fn betti_table(ideal: &MonomialIdeal, field: CoeffField, lcm_cap: usize) -> Result<BettiTable> {
    let mut entries = BTreeMap::new();
    for b in ideal.lcm_lattice(lcm_cap)? {
        let cx = upper_koszul_complex(ideal, &b)?;
        cx.assert_closed()?;
        for (i, entry) in reduced_homology(&cx, field).into_iter().enumerate() {
            if entry.rank > 0 || entry.torsion {
                entries.insert((i, b.clone()), entry);
            }
        }
    }
    Ok(BettiTable { field, entries })
}

/// Castelnuovo-Mumford regularity of a monomial ideal over the rationals.
/// The unit ideal is the free module, with regularity 0.
pub fn regularity(ideal: &MonomialIdeal, lcm_cap: usize) -> Result<u64> {
    regularity_over(ideal, CoeffField::Rational, lcm_cap)
}

pub fn regularity_over(ideal: &MonomialIdeal, field: CoeffField, lcm_cap: usize) -> Result<u64> {
    if ideal.is_unit() || ideal.is_zero() {
        return Ok(0);
    }
    Ok(betti_table(ideal, field, lcm_cap)?.regularity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    const CAP: usize = 1 << 20;

    fn ideal(dim: usize, rows: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_exponent_rows(dim, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn upper_koszul_examples() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        // hollow edge at b = (1,1)
        let cx = upper_koszul_complex(&i, &IntVec::from_i64(&[1, 1])).unwrap();
        assert_eq!(cx.faces(), &[0b00, 0b01, 0b10]);
        // only the empty face at b = (1,0)
        let cx = upper_koszul_complex(&i, &IntVec::from_i64(&[1, 0])).unwrap();
        assert_eq!(cx.faces(), &[0b00]);
        // void complex at b = 0
        let cx = upper_koszul_complex(&i, &IntVec::from_i64(&[0, 0])).unwrap();
        assert!(cx.is_void());
    }

    #[test]
    fn betti_of_regular_pair() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        let t = betti_table(&i, CoeffField::Rational, CAP).unwrap();
        assert_eq!(t.rank(0, &IntVec::from_i64(&[1, 0])), 1);
        assert_eq!(t.rank(0, &IntVec::from_i64(&[0, 1])), 1);
        assert_eq!(t.rank(1, &IntVec::from_i64(&[1, 1])), 1);
        assert_eq!(t.entries().count(), 3);
        assert!(!t.has_torsion());
    }

    #[test]
    fn betti_of_two_disjoint_quadrics() {
        let i = ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let t = betti_table(&i, CoeffField::Rational, CAP).unwrap();
        let deg2: Vec<_> = t
            .entries()
            .filter(|((i, _), e)| *i == 0 && e.rank > 0)
            .collect();
        assert_eq!(deg2.len(), 2);
        assert_eq!(t.rank(1, &IntVec::from_i64(&[1, 1, 1, 1])), 1);
    }

    #[test]
    fn betti_of_triangle() {
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let t = betti_table(&i, CoeffField::Rational, CAP).unwrap();
        let first: Vec<_> = t.entries().filter(|((i, _), _)| *i == 1).collect();
        // two syzygies in degree three, both at the same multidegree
        assert_eq!(first.len(), 1);
        assert_eq!(t.rank(1, &IntVec::from_i64(&[1, 1, 1])), 2);
    }

    #[test]
    fn regularity_goldens() {
        assert_eq!(regularity(&ideal(2, &[&[1, 0], &[0, 1]]), CAP).unwrap(), 1);
        assert_eq!(
            regularity(&ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]), CAP).unwrap(),
            3
        );
        assert_eq!(
            regularity(&ideal(3, &[&[1, 1, 0], &[0, 0, 1]]), CAP).unwrap(),
            2
        );
        assert_eq!(
            regularity(&ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]), CAP).unwrap(),
            2
        );
        assert_eq!(regularity(&MonomialIdeal::unit(3), CAP).unwrap(), 0);
    }

    #[test]
    fn betti_zero_entries_are_the_minimal_generators() {
        let i = ideal(3, &[&[2, 1, 0], &[0, 1, 1], &[1, 0, 2]]);
        let t = betti_table(&i, CoeffField::Rational, CAP).unwrap();
        let mut found: Vec<Monomial> = Vec::new();
        for ((idx, b), e) in t.entries() {
            if *idx == 0 {
                assert_eq!(e.rank, 1);
                found.push(Monomial::new(b.clone()).unwrap());
            }
        }
        let mut expected = i.min_gens().to_vec();
        expected.sort();
        assert_eq!(found, expected);
    }

    #[test]
    fn prime_field_matches_rational_without_torsion() {
        for rows in [
            vec![vec![1u64, 1, 0, 0], vec![0, 0, 1, 1]],
            vec![vec![2, 0, 1], vec![0, 1, 2], vec![1, 2, 0]],
        ] {
            let i = MonomialIdeal::from_exponent_rows(rows[0].len(), &rows);
            let rational = betti_table(&i, CoeffField::Rational, CAP).unwrap();
            assert!(!rational.has_torsion());
            for p in [2u64, 3, 5] {
                let modp = betti_table(&i, CoeffField::prime(p).unwrap(), CAP).unwrap();
                for ((idx, b), e) in rational.entries() {
                    assert_eq!(modp.rank(*idx, b), e.rank);
                }
                assert_eq!(
                    modp.entries().filter(|(_, e)| e.rank > 0).count(),
                    rational.entries().filter(|(_, e)| e.rank > 0).count()
                );
            }
        }
    }

    #[test]
    fn prime_must_be_prime() {
        assert!(CoeffField::prime(6).is_err());
        assert!(CoeffField::prime(7).is_ok());
    }
}
