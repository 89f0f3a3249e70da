//! Arithmetic over `Z/pZ` and `Z/p^B Z`: p-ranks and per-prime
//! elementary-divisor profiles without a full integer Smith form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{bareiss, IntMatrix};
use crate::error::{Error, Result};
use crate::factor::valuation;
use crate::prime::Prime;

/// Multiplicities of `p^i` among the elementary divisors of a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElemDivisorProfile {
    pub p: Prime,
    /// `multiplicities[i]` counts nonzero invariant factors with p-adic
    /// valuation exactly `i`; trailing zeros are trimmed.
    pub multiplicities: Vec<usize>,
    /// Number of zero invariant factors.
    pub kernel_rank: usize,
}

impl ElemDivisorProfile {
    /// Profile read off a list of invariant factors.
    pub fn from_invariant_factors(factors: &[BigInt], p: Prime) -> Self {
        let mut multiplicities = Vec::new();
        let mut kernel_rank = 0;
        for d in factors {
            if d.is_zero() {
                kernel_rank += 1;
                continue;
            }
            let v = valuation(d, p.get()) as usize;
            if multiplicities.len() <= v {
                multiplicities.resize(v + 1, 0);
            }
            multiplicities[v] += 1;
        }
        ElemDivisorProfile { p, multiplicities, kernel_rank }
    }

    pub fn e(&self, i: usize) -> usize {
        self.multiplicities.get(i).copied().unwrap_or(0)
    }

    /// Rank over `F_p`.
    pub fn p_rank(&self) -> usize {
        self.e(0)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// `sum i * e_i`, the p-adic valuation of the product of the nonzero
    /// invariant factors.
    pub fn total_valuation(&self) -> u64 {
        self.multiplicities.iter().enumerate().map(|(i, &e)| (i * e) as u64).sum()
    }

    /// Number of invariant factors divisible by `p` (zero factors excluded).
    pub fn divisible_count(&self) -> usize {
        self.rank() - self.p_rank()
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod_u64(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i128) as u64
}

/// Rank of the reduction of `m` modulo `p`.
pub fn rank_mod_p(m: &IntMatrix, p: Prime) -> usize {
    let pp = p.get();
    let bp = BigInt::from(pp);
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<u64> = m.entries().iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod_u64(a[r * cols + c], pp);
        for i in r + 1..rows {
            let lead = a[i * cols + c];
            if lead == 0 {
                continue;
            }
            let f = mul_mod(lead, inv, pp);
            for j in c..cols {
                let sub = mul_mod(f, a[r * cols + j], pp);
                let x = &mut a[i * cols + j];
                *x = if *x >= sub { *x - sub } else { *x + pp - sub };
            }
        }
        r += 1;
    }
    r
}

/// Inverse of a unit modulo `q`.
pub(crate) fn inv_mod(a: &BigInt, q: &BigInt) -> BigInt {
    let g = a.extended_gcd(q);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(q)
}

/// Valuation of `x` modulo `p^precision`; `None` when `x == 0` there.
fn truncated_valuation(x: &BigInt, p: &BigInt, precision: u32) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let mut v = 0;
    let mut y = x.clone();
    while v < precision {
        let (q, r) = y.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        y = q;
        v += 1;
    }
    None
}

/// Per-prime elementary divisor profile by valuation-pivoted elimination
/// over `Z/p^B`.
///
/// The precision `B` is one more than the p-adic valuation of a nonzero
/// maximal minor (found by Bareiss elimination). That minor is a multiple
/// of the product of the nonzero invariant factors, so every nonzero
/// elementary divisor has valuation below `B` and survives the reduction.
pub fn elem_divisor_profile(m: &IntMatrix, p: Prime) -> ElemDivisorProfile {
    let e = bareiss::eliminate(m);
    let precision = if e.rank == 0 { 1 } else { valuation(&e.pivot_minor, p.get()) as u32 + 1 };
    let profile = local_elimination(m, p, precision);
    debug_assert_eq!(profile.rank(), e.rank);
    profile
}

/// As [`elem_divisor_profile`], with the caller supplying the precision.
///
/// `precision` must exceed the p-adic valuation of the product of the
/// nonzero invariant factors, and `rank` must be the rational rank of `m`.
/// For a connected graph Laplacian the product is the spanning-tree count
/// and the rank is `n - 1`.
pub fn elem_divisor_profile_with_precision(
    m: &IntMatrix,
    p: Prime,
    precision: u32,
    rank: usize,
) -> Result<ElemDivisorProfile> {
    let profile = local_elimination(m, p, precision.max(1));
    if profile.rank() != rank {
        return Err(Error::DimensionMismatch(format!(
            "precision p^{precision} resolved {} pivots but the rank is {rank}",
            profile.rank()
        )));
    }
    Ok(profile)
}

fn local_elimination(m: &IntMatrix, p: Prime, precision: u32) -> ElemDivisorProfile {
    let bp = BigInt::from(p.get());
    let q = num_traits::pow(bp.clone(), precision as usize);
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<BigInt> = m.entries().iter().map(|x| x.mod_floor(&q)).collect();
    let n = rows.min(cols);
    let mut multiplicities: Vec<usize> = Vec::new();
    let mut t = 0;
    while t < n {
        // Pivot on an entry of least valuation.
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for i in t..rows {
            for j in t..cols {
                if let Some(v) = truncated_valuation(&a[i * cols + j], &bp, precision) {
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else { break };
        if pi != t {
            for j in 0..cols {
                a.swap(pi * cols + j, t * cols + j);
            }
        }
        if pj != t {
            for i in 0..rows {
                a.swap(i * cols + pj, i * cols + t);
            }
        }
        let pv = num_traits::pow(bp.clone(), v as usize);
        let unit = &a[t * cols + t] / &pv;
        let unit_inv = inv_mod(&unit, &q);
        // Clearing the pivot column suffices: column operations clearing
        // the pivot row would not touch the trailing block.
        for i in t + 1..rows {
            let lead = &a[i * cols + t];
            if lead.is_zero() {
                continue;
            }
            let f = ((lead / &pv) * &unit_inv).mod_floor(&q);
            for j in t..cols {
                let sub = &f * &a[t * cols + j];
                let x = &mut a[i * cols + j];
                *x = (&*x - sub).mod_floor(&q);
            }
        }
        let v = v as usize;
        if multiplicities.len() <= v {
            multiplicities.resize(v + 1, 0);
        }
        multiplicities[v] += 1;
        t += 1;
    }
    let kernel_rank = n - multiplicities.iter().sum::<usize>();
    ElemDivisorProfile { p, multiplicities, kernel_rank }
}

/// Profiles for several primes, computed in parallel.
pub fn elem_divisor_profiles(m: &IntMatrix, primes: &[Prime]) -> Vec<ElemDivisorProfile> {
    primes.par_iter().map(|&p| elem_divisor_profile(m, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_mod_p(&IntMatrix::identity(5), prime(5)), 5);
        assert_eq!(rank_mod_p(&IntMatrix::from_diagonal(&[5, 1]), prime(5)), 1);
        assert_eq!(rank_mod_p(&IntMatrix::from_rows(&[vec![-1, 3], vec![2, 1]]), prime(7)), 1);
    }

    #[test]
    fn profile_examples() {
        let p = elem_divisor_profile(&IntMatrix::from_diagonal(&[1, 5, 25]), prime(5));
        assert_eq!(p.multiplicities, vec![1, 1, 1]);
        assert_eq!(p.kernel_rank, 0);
        let p = elem_divisor_profile(&IntMatrix::from_diagonal(&[10, 20]), prime(2));
        assert_eq!(p.multiplicities, vec![0, 1, 1]);
    }

    #[test]
    fn profile_with_kernel() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 0], vec![6, 8, 0], vec![0, 0, 0], vec![1, 2, 0]]);
        let p = elem_divisor_profile(&m, prime(2));
        assert_eq!(p.kernel_rank, 1);
        assert_eq!(p.rank(), 2);
        assert!(elem_divisor_profile(&IntMatrix::zeros(2, 2), prime(3)).multiplicities.is_empty());
    }

    #[test]
    fn explicit_precision_detects_shortfall() {
        let m = IntMatrix::from_diagonal(&[1, 125]);
        assert!(elem_divisor_profile_with_precision(&m, prime(5), 2, 2).is_err());
        let ok = elem_divisor_profile_with_precision(&m, prime(5), 4, 2).unwrap();
        assert_eq!(ok.multiplicities, vec![1, 0, 0, 1]);
    }
}
