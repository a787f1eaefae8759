//! Brute-force reference implementations used only for cross-validation.
//!
//! These deliberately duplicate the primary algorithms from their
//! definitions: the Apery scan quantifies over the whole corner submonoid
//! instead of single corner steps, the reduction number is found by literal
//! layer saturation, normality by testing every residue representative for
//! membership, and Betti numbers through the Koszul complex of the quotient
//! with ranks from fraction-free elimination rather than Smith normal form.
//! They share only the vector type and the membership layers with the
//! primary code paths.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::homology::{betti_table, CoeffField};
use crate::lattice::{class_representative, IntVec};
use crate::monomial::MonomialIdeal;
use crate::semigroup::{
    apery_set, class_count, reduction_number, LayeredMembership, SemigroupPresentation,
};
use crate::veronese;
use crate::Caps;

/// The Apery set by definition: scan every member up to the class-count
/// bound and test subtractability against every nonzero element of the
/// corner submonoid that fits under the member.
pub fn apery_oracle(
    p: &SemigroupPresentation,
    layers: &mut LayeredMembership,
) -> Result<BTreeSet<IntVec>> {
    let f = class_count(p)?;
    let bound = (&f - BigInt::from(p.codim()))
        .to_usize()
        .ok_or_else(|| Error::BoundExceeded {
            what: format!("oracle scan bound {f} - codim"),
            cap: usize::MAX,
        })?;
    layers.ensure_degree(bound)?;

    let alpha = p.alpha();
    let mut result = BTreeSet::new();
    for n in 0..=bound {
        for x in layers.layer(n) {
            if !subtractable_by_corner_submonoid(x, alpha, layers) {
                result.insert(x.clone());
            }
        }
    }
    Ok(result)
}

/// Whether `x - alpha*v` is a member for some nonzero `v >= 0`. Vectors `v`
/// with `alpha*v` not componentwise below `x` would leave the nonnegative
/// orthant and need no test.
fn subtractable_by_corner_submonoid(x: &IntVec, alpha: u64, layers: &LayeredMembership) -> bool {
    let alpha_big = BigInt::from(alpha);
    let caps: Vec<u64> = x
        .coords()
        .iter()
        .map(|c| (c / &alpha_big).to_u64().expect("coordinate over alpha"))
        .collect();
    let mut v = vec![0u64; caps.len()];
    loop {
        // advance v through the box [0, caps] in odometer order
        let mut i = 0;
        loop {
            if i == v.len() {
                return false;
            }
            if v[i] < caps[i] {
                v[i] += 1;
                break;
            }
            v[i] = 0;
            i += 1;
        }
        let shifted = IntVec::new(
            x.coords()
                .iter()
                .zip(&v)
                .map(|(c, &vi)| c - BigInt::from(vi) * &alpha_big)
                .collect(),
        );
        if layers.is_member(&shifted) {
            return true;
        }
    }
}

/// Reduction number by literal layer saturation: the smallest `r` such that
/// shifting layer `r` by the corners fills layer `r + 1`.
pub fn reduction_oracle(
    p: &SemigroupPresentation,
    layers: &mut LayeredMembership,
) -> Result<u64> {
    let f = class_count(p)?;
    let bound = (&f - BigInt::from(p.codim()))
        .to_usize()
        .ok_or_else(|| Error::BoundExceeded {
            what: format!("oracle saturation bound {f} - codim"),
            cap: usize::MAX,
        })?;
    let corners = p.corner_generators();
    for r in 0..=bound {
        layers.ensure_degree(r + 1)?;
        let mut shifted: HashSet<IntVec> = HashSet::new();
        for x in layers.layer(r) {
            for e in &corners {
                shifted.insert(x.add(e));
            }
        }
        if !shifted.is_subset(layers.layer(r + 1)) {
            return Err(Error::Internal(
                "corner-shifted layer escapes the next layer".into(),
            ));
        }
        if shifted.len() == layers.layer(r + 1).len() {
            return Ok(r as u64);
        }
    }
    Err(Error::Internal(
        "layer saturation not reached within the class-count bound".into(),
    ))
}

/// All residue representatives of the generated group in the half-open cell,
/// found by closing the interior residues under addition modulo alpha.
pub fn residue_representatives(p: &SemigroupPresentation) -> Result<BTreeSet<IntVec>> {
    let mut set: BTreeSet<IntVec> = BTreeSet::new();
    set.insert(IntVec::zero(p.dim()));
    let step_residues: Vec<IntVec> = p
        .interior_generators()
        .iter()
        .map(|g| class_representative(g, p.alpha()))
        .collect();
    let mut frontier: Vec<IntVec> = vec![IntVec::zero(p.dim())];
    while let Some(x) = frontier.pop() {
        for s in &step_residues {
            let next = class_representative(&x.add(s), p.alpha());
            if set.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let f = class_count(p)?;
    if BigInt::from(set.len()) != f {
        return Err(Error::Internal(format!(
            "residue closure found {} classes, lattice index predicts {f}",
            set.len()
        )));
    }
    Ok(set)
}

/// Normality by definition of the representatives: the ring is normal iff
/// every residue representative of the group already lies in the semigroup.
pub fn normality_oracle(
    p: &SemigroupPresentation,
    layers: &mut LayeredMembership,
) -> Result<bool> {
    for rep in residue_representatives(p)? {
        if !layers.contains(&rep)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
fn rank_bareiss(mut m: Vec<Vec<BigInt>>) -> usize {
    let nr = m.len();
    let nc = if nr > 0 { m[0].len() } else { 0 };
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..nc {
        let Some(pivot_row) = (rank..nr).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for i in rank + 1..nr {
            for j in col + 1..nc {
                let val = (&m[i][j] * &pivot - &m[i][col] * &m[rank][j]) / &prev;
                m[i][j] = val;
            }
            m[i][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

/// Betti numbers of the ideal at multidegree `b` through the Koszul complex
/// of the quotient ring: the strand basis at level `j` consists of the
/// subsets of size `j` whose complementary monomial survives in the
/// quotient, with the standard signed boundary. The homology of the ideal at
/// index `i` is the level-`(i+1)` homology of this strand. Returns the ranks
/// for `i = 0 .. d-1`.
pub fn betti_oracle_koszul_tor(ideal: &MonomialIdeal, b: &IntVec) -> Vec<u64> {
    let dim = ideal.dim();
    assert!(dim <= 25, "oracle limited to 25 variables");
    let mut basis: Vec<Vec<u64>> = vec![Vec::new(); dim + 2];
    for mask in 0u64..(1 << dim) {
        let mut shifted = b.clone();
        for v in 0..dim {
            if mask >> v & 1 == 1 {
                shifted = shifted.sub(&IntVec::scaled_unit(dim, v, 1));
            }
        }
        if shifted.is_nonnegative() && !ideal.contains_exponents(&shifted) {
            basis[mask.count_ones() as usize].push(mask);
        }
    }
    let mut ranks = vec![0usize; dim + 2];
    for j in 1..=dim {
        if basis[j].is_empty() || basis[j - 1].is_empty() {
            continue;
        }
        let rows = &basis[j - 1];
        let cols = &basis[j];
        let mut matrix = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
        for (cj, &face) in cols.iter().enumerate() {
            let mut sign = BigInt::from(1);
            let mut rest = face;
            while rest != 0 {
                let v = rest & rest.wrapping_neg();
                rest ^= v;
                if let Ok(ri) = rows.binary_search(&(face ^ v)) {
                    matrix[ri][cj] = sign.clone();
                }
                sign = -sign;
            }
        }
        ranks[j] = rank_bareiss(matrix);
    }
    (1..=dim)
        .map(|j| (basis[j].len() - ranks[j] - ranks[j + 1]) as u64)
        .collect()
}

/// Result of one oracle comparison.
#[derive(Clone, Debug)]
pub struct VerifyCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Runs every oracle against the primary implementation on one presentation.
pub fn verify_presentation(p: &SemigroupPresentation, caps: &Caps) -> Result<Vec<VerifyCheck>> {
    let mut checks = Vec::new();
    let mut layers = LayeredMembership::new(p, *caps);

    let apery = apery_set(p, &mut layers)?;
    let primary: BTreeSet<IntVec> = apery.elements().cloned().collect();
    let oracle = apery_oracle(p, &mut layers)?;
    checks.push(VerifyCheck {
        name: "apery_oracle".into(),
        passed: primary == oracle,
        detail: format!("{} elements", oracle.len()),
    });

    let red_primary = reduction_number(p, &mut layers)?;
    let red_oracle = reduction_oracle(p, &mut layers)?;
    checks.push(VerifyCheck {
        name: "reduction_oracle".into(),
        passed: red_primary == red_oracle,
        detail: format!("primary {red_primary}, oracle {red_oracle}"),
    });

    let normal_primary = crate::decompose::is_normal(p, &mut layers)?;
    let normal_oracle = normality_oracle(p, &mut layers)?;
    checks.push(VerifyCheck {
        name: "normality_oracle".into(),
        passed: normal_primary == normal_oracle,
        detail: format!("primary {normal_primary}, oracle {normal_oracle}"),
    });

    let dec = crate::decompose::decompose(p, &mut layers)?;
    let mut betti_ok = true;
    let mut compared = 0usize;
    for class in &dec.classes {
        if !betti_agrees(&class.ideal, caps, &mut compared)? {
            betti_ok = false;
        }
    }
    checks.push(VerifyCheck {
        name: "betti_oracle".into(),
        passed: betti_ok,
        detail: format!("{compared} multidegrees compared"),
    });

    Ok(checks)
}

/// Entrywise comparison of the primary Betti table against the Koszul
/// oracle over every lcm-lattice multidegree. Only proper ideals qualify:
/// the index shift between an ideal and its quotient degenerates for the
/// unit ideal, whose table is trivially the free module's.
pub fn betti_agrees(ideal: &MonomialIdeal, caps: &Caps, compared: &mut usize) -> Result<bool> {
    if !ideal.is_proper() {
        return Ok(true);
    }
    let table = betti_table(ideal, CoeffField::Rational, caps.max_lcm_lattice)?;
    for b in ideal.lcm_lattice(caps.max_lcm_lattice)? {
        let oracle = betti_oracle_koszul_tor(ideal, &b);
        *compared += 1;
        for (i, &rank) in oracle.iter().enumerate() {
            if table.rank(i, &b) != rank {
                return Ok(false);
            }
        }
        // the primary table must not carry entries the oracle missed
        for ((i, bb), e) in table.entries() {
            if bb == &b && e.rank > 0 && oracle.get(*i).copied().unwrap_or(0) != e.rank {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Options for the random presentation corpus.
#[derive(Clone, Copy, Debug)]
pub struct CorpusOptions {
    pub max_dim: usize,
    pub max_alpha: u64,
    pub max_codim: usize,
    /// Reject instances whose class-count bound exceeds this, keeping the
    /// oracle scans desk-scale.
    pub max_scan_bound: u64,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            max_dim: 3,
            max_alpha: 4,
            max_codim: 4,
            max_scan_bound: 12,
        }
    }
}

/// Samples a random valid presentation within the corpus bounds.
pub fn random_presentation(rng: &mut StdRng, opts: &CorpusOptions) -> SemigroupPresentation {
    loop {
        let dim = rng.random_range(2..=opts.max_dim);
        let alpha = rng.random_range(2..=opts.max_alpha);
        let params = veronese::VeroneseParams::new(dim, alpha).expect("positive parameters");
        let mut pool: Vec<IntVec> = veronese::generators(&params)
            .into_iter()
            .filter(|g| !g.coords().iter().any(|c| *c == BigInt::from(alpha)))
            .collect();
        if pool.is_empty() {
            continue;
        }
        pool.shuffle(rng);
        let c = rng.random_range(1..=opts.max_codim.min(pool.len()));
        let mut gens: Vec<IntVec> = (0..dim)
            .map(|i| IntVec::scaled_unit(dim, i, alpha))
            .collect();
        gens.extend(pool.into_iter().take(c));
        let p = SemigroupPresentation::new(dim, alpha, gens).expect("valid by construction");
        let f = class_count(&p).expect("full rank by construction");
        let bound = &f - BigInt::from(p.codim());
        if bound <= BigInt::from(opts.max_scan_bound) {
            return p;
        }
    }
}

pub fn random_presentations(
    seed: u64,
    count: usize,
    opts: &CorpusOptions,
) -> Vec<SemigroupPresentation> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_presentation(&mut rng, opts)).collect()
}

/// Samples a proper monomial ideal with at most `max_gens` generators in at
/// most `max_vars` variables and exponents up to `max_exp`.
pub fn random_monomial_ideal(
    rng: &mut StdRng,
    max_vars: usize,
    max_gens: usize,
    max_exp: u64,
) -> MonomialIdeal {
    loop {
        let vars = rng.random_range(2..=max_vars);
        let gens = rng.random_range(1..=max_gens);
        let mut rows = Vec::with_capacity(gens);
        for _ in 0..gens {
            let row: Vec<u64> = (0..vars).map(|_| rng.random_range(0..=max_exp)).collect();
            if row.iter().all(|&e| e == 0) {
                continue;
            }
            rows.push(row);
        }
        if rows.is_empty() {
            continue;
        }
        let ideal = MonomialIdeal::from_exponent_rows(vars, &rows);
        if ideal.is_proper() {
            return ideal;
        }
    }
}

pub fn random_monomial_ideals(
    seed: u64,
    count: usize,
    max_vars: usize,
    max_gens: usize,
    max_exp: u64,
) -> Vec<MonomialIdeal> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_monomial_ideal(&mut rng, max_vars, max_gens, max_exp))
        .collect()
}
