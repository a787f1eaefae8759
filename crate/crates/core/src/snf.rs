//! Exact Smith normal form of integer matrices, plus a prime-field rank
//! routine for the optional finite-characteristic mode.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Diagonal data of the Smith normal form: the rank and the positive
/// invariant factors `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    /// True when some invariant factor differs from 1, i.e. the cokernel has
    /// torsion and homology ranks may depend on the coefficient field.
    pub fn has_nontrivial_factor(&self) -> bool {
        self.invariant_factors.iter().any(|f| *f != BigInt::from(1))
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Reduces `m` by integer row and column operations; `m` is consumed.
pub fn smith_normal_form(mut m: Vec<Vec<BigInt>>) -> SmithForm {
    let nr = m.len();
    let nc = if nr > 0 { m[0].len() } else { 0 };
    let mut factors = Vec::new();
    let mut k = 0;

    while k < nr.min(nc) {
        // smallest-absolute-value nonzero entry of the trailing submatrix
        let mut piv: Option<(usize, usize)> = None;
        for i in k..nr {
            for j in k..nc {
                if !m[i][j].is_zero()
                    && piv.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        m.swap(k, pi);
        swap_cols(&mut m, k, pj);

        'reduce: loop {
            // clear the pivot column
            for i in k + 1..nr {
                if m[i][k].is_zero() {
                    continue;
                }
                let q = &m[i][k] / &m[k][k];
                if !q.is_zero() {
                    for j in k..nc {
                        let t = &m[k][j] * &q;
                        m[i][j] -= t;
                    }
                }
                if !m[i][k].is_zero() {
                    // strictly smaller remainder: promote it and start over
                    m.swap(k, i);
                    continue 'reduce;
                }
            }
            // clear the pivot row
            for j in k + 1..nc {
                if m[k][j].is_zero() {
                    continue;
                }
                let q = &m[k][j] / &m[k][k];
                if !q.is_zero() {
                    for i in k..nr {
                        let t = &m[i][k] * &q;
                        m[i][j] -= t;
                    }
                }
                if !m[k][j].is_zero() {
                    swap_cols(&mut m, k, j);
                    continue 'reduce;
                }
            }
            // enforce divisibility of the trailing block by the pivot
            for i in k + 1..nr {
                for j in k + 1..nc {
                    if !(&m[i][j] % &m[k][k]).is_zero() {
                        for col in k..nc {
                            let t = m[i][col].clone();
                            m[k][col] += t;
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }

        factors.push(m[k][k].abs());
        k += 1;
    }

    SmithForm {
        rank: factors.len(),
        invariant_factors: factors,
    }
}

/// Rank of `m` over the field with `p` elements (`p` prime).
pub fn rank_mod_p(m: &[Vec<BigInt>], p: u64) -> usize {
    let nr = m.len();
    let nc = if nr > 0 { m[0].len() } else { 0 };
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let r = e % &pb;
                    let r = if r.is_negative() { r + &pb } else { r };
                    r.to_u64().expect("residue fits u64")
                })
                .collect()
        })
        .collect();

    let mut rank = 0;
    for col in 0..nc {
        let Some(pivot) = (rank..nr).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = mod_inverse(a[rank][col], p);
        for j in col..nc {
            a[rank][j] = mod_mul(a[rank][j], inv, p);
        }
        for i in 0..nr {
            if i != rank && a[i][col] != 0 {
                let factor = a[i][col];
                for j in col..nc {
                    let t = mod_mul(factor, a[rank][j], p);
                    a[i][j] = (a[i][j] + p - t) % p;
                }
            }
        }
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    // deterministic Miller-Rabin bases for u64
    let d = (n - 1) >> (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        let mut r = d;
        while r != n - 1 {
            x = mod_mul(x, x, n);
            r <<= 1;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
