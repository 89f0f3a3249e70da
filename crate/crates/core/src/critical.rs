//! Critical groups, spanning-tree counts and bicycle dimensions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::graph::{Graph, SrgSpectrum};
use crate::linalg::{determinant, elem_divisor_profile, elem_divisor_profile_with_precision, snf, ElemDivisorProfile};
use crate::prime::Prime;

/// Above this many vertices the group is assembled from per-prime
/// profiles instead of a full integer Smith form.
pub const SNF_VERTEX_LIMIT: usize = 200;

const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// The torsion part of the cokernel of the Laplacian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalGroup {
    /// Invariant factors greater than 1, in divisibility order.
    pub invariant_factors: Vec<BigInt>,
    pub order: BigInt,
    /// Free rank of the cokernel, i.e. the number of connected components.
    pub free_rank: usize,
}

impl CriticalGroup {
    fn from_factors(all: &[BigInt]) -> Self {
        let free_rank = all.iter().filter(|d| d.is_zero()).count();
        let invariant_factors: Vec<BigInt> = all.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        let order = invariant_factors.iter().product();
        CriticalGroup { invariant_factors, order, free_rank }
    }

    pub fn order_factored(&self) -> Factorization {
        self.invariant_factors
            .iter()
            .map(|d| Factorization::of_bigint(d, u64::MAX).0)
            .fold(Factorization::one(), |acc, f| acc.mul(&f))
    }

    pub fn profile(&self, p: Prime) -> ElemDivisorProfile {
        let mut p = ElemDivisorProfile::from_invariant_factors(&self.invariant_factors, p);
        p.kernel_rank = self.free_rank;
        p
    }
}

pub fn critical_group(g: &Graph) -> CriticalGroup {
    if g.n() > SNF_VERTEX_LIMIT {
        if let Some(cg) = critical_group_via_profiles(g) {
            return cg;
        }
    }
    critical_group_via_snf(g)
}

pub fn critical_group_via_snf(g: &Graph) -> CriticalGroup {
    CriticalGroup::from_factors(&snf(&g.laplacian_matrix(), false).invariant_factors)
}

/// Torsion order as the product of the spanning-tree counts of the
/// components.
fn torsion_order(g: &Graph) -> BigInt {
    components(g).iter().map(spanning_tree_count).product()
}

fn components(g: &Graph) -> Vec<Graph> {
    let adj = g.neighbors();
    let mut label = vec![usize::MAX; g.n()];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..g.n() {
        if label[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        label[s] = id;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if label[w] == usize::MAX {
                    label[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        comps.push(members);
    }
    comps
        .into_iter()
        .map(|members| {
            let mut index = vec![usize::MAX; g.n()];
            for (i, &v) in members.iter().enumerate() {
                index[v] = i;
            }
            let edges = g.edges().iter().filter(|(u, _)| index[*u] != usize::MAX).map(|&(u, v)| (index[u], index[v]));
            Graph::from_edges(members.len(), edges).unwrap()
        })
        .collect()
}

/// Builds the group from elementary-divisor profiles at each prime
/// dividing the spanning-tree count. Returns `None` when trial division
/// cannot fully factor that count.
pub fn critical_group_via_profiles(g: &Graph) -> Option<CriticalGroup> {
    let order = torsion_order(g);
    let free_rank = g.component_count();
    let rank = g.n() - free_rank;
    let (fact, rest) = Factorization::of_bigint(&order, TRIAL_DIVISION_BOUND);
    if !rest.is_one() {
        return None;
    }
    let laplacian = g.laplacian_matrix();
    let primes: Vec<(Prime, u64)> = fact.iter().map(|(p, e)| (Prime::new(p).unwrap(), e)).collect();
    let profiles: Vec<ElemDivisorProfile> = {
        use rayon::prelude::*;
        primes
            .par_iter()
            .map(|&(p, e)| elem_divisor_profile_with_precision(&laplacian, p, e as u32 + 1, rank))
            .collect::<Result<_>>()
            .ok()?
    };
    Some(assemble(&profiles, order, free_rank))
}

/// Invariant factors from elementary divisors: the j-th largest invariant
/// factor takes the j-th largest power of each prime.
fn assemble(profiles: &[ElemDivisorProfile], order: BigInt, free_rank: usize) -> CriticalGroup {
    let mut per_prime: Vec<(u64, Vec<usize>)> = Vec::new();
    for prof in profiles {
        let mut exps: Vec<usize> =
            prof.multiplicities.iter().enumerate().skip(1).flat_map(|(i, &e)| std::iter::repeat_n(i, e)).collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push((prof.p.get(), exps));
    }
    let count = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<BigInt> = (0..count)
        .map(|j| {
            per_prime.iter().fold(BigInt::one(), |acc, (p, exps)| {
                acc * num_traits::pow(BigInt::from(*p), exps.get(j).copied().unwrap_or(0))
            })
        })
        .collect();
    factors.reverse();
    debug_assert_eq!(factors.iter().product::<BigInt>(), order);
    CriticalGroup { invariant_factors: factors, order, free_rank }
}

/// Determinant of the Laplacian with row and column 0 removed; zero for a
/// disconnected graph.
pub fn spanning_tree_count(g: &Graph) -> BigInt {
    if g.n() == 0 {
        return BigInt::zero();
    }
    let reduced = g.laplacian_matrix().minor_matrix(0, 0);
    determinant(&reduced).expect("reduced Laplacian is square")
}

/// Number of even nonzero invariant factors of the Laplacian, which is the
/// dimension of the bicycle space over `F_2`.
pub fn bicycle_dimension(g: &Graph) -> usize {
    elem_divisor_profile(&g.laplacian_matrix(), Prime::new(2).unwrap()).divisible_count()
}

/// Factorization of the product of the nonzero Laplacian eigenvalues of a
/// connected strongly regular graph, divided by `v`.
pub fn predicted_order_from_spectrum(s: &SrgSpectrum, v: i64) -> Result<Factorization> {
    let [(l1, m1), (l2, m2)] = s.laplacian_eigenvalues();
    let product = match (l1.as_integer(), l2.as_integer()) {
        (Some(a), Some(b)) => {
            if a <= 0 || b <= 0 {
                return Err(Error::InfeasibleParameters(format!(
                    "Laplacian eigenvalues {a}, {b} describe a disconnected graph"
                )));
            }
            Factorization::of_u64(a as u64).pow(m1 as u64).mul(&Factorization::of_u64(b as u64).pow(m2 as u64))
        }
        _ => {
            // conjugate pair with equal multiplicities
            debug_assert_eq!(m1, m2);
            Factorization::of_u64(s.laplacian_norm() as u64).pow(m1 as u64)
        }
    };
    product
        .checked_div(&Factorization::of_u64(v as u64))
        .ok_or_else(|| Error::InfeasibleParameters(format!("eigenvalue product {product} is not divisible by {v}")))
}
