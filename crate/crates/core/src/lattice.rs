//! p-adic filtrations of an integer map `eta: Z^n -> Z^m`.
//!
//! `M_i = { x : eta(x) in p^i Z^m }` descends in the domain and
//! `N_i = p^-i eta(M_i)` ascends in the codomain. The dimensions of their
//! reductions mod p are determined by the elementary divisors of `eta`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::factor::valuation;
use crate::linalg::{elem_divisor_profile, inv_mod, rank_mod_p, snf, IntMatrix};
use crate::prime::Prime;

/// A sublattice of `Z^n`, stored as a basis in echelon form: basis vectors
/// have distinct leading coordinates, positive leading entries, and each
/// vector's entries at later leading positions are reduced modulo the
/// corresponding leading entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: BTreeMap<usize, Vec<BigInt>>,
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn reduce_mod(v: &mut [BigInt], modulus: &BigInt) {
    for x in v.iter_mut() {
        *x = x.mod_floor(modulus);
    }
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: BTreeMap::new() }
    }

    /// `scale * Z^dim`.
    pub fn scaled_standard(dim: usize, scale: &BigInt) -> Self {
        let basis = (0..dim)
            .map(|i| {
                let mut v = vec![BigInt::zero(); dim];
                v[i] = scale.abs();
                (i, v)
            })
            .collect();
        Lattice { dim, basis }
    }

    pub fn from_generators(dim: usize, gens: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        let mut l = Lattice::zero(dim);
        for g in gens {
            l.insert(g, None);
            // keeps entries bounded by the pivots
            l.normalize();
        }
        l
    }

    /// Lattice generated by `gens` together with `modulus * Z^dim`; entries
    /// stay reduced modulo `modulus` throughout.
    pub fn from_generators_mod(dim: usize, gens: impl IntoIterator<Item = Vec<BigInt>>, modulus: &BigInt) -> Self {
        let mut l = Lattice::scaled_standard(dim, modulus);
        for g in gens {
            l.insert(g, Some(modulus));
        }
        l.normalize();
        l
    }

    fn insert(&mut self, mut g: Vec<BigInt>, modulus: Option<&BigInt>) {
        assert_eq!(g.len(), self.dim, "generator has wrong length");
        loop {
            if let Some(m) = modulus {
                reduce_mod(&mut g, m);
            }
            let Some(r) = leading(&g) else { return };
            let Some(b) = self.basis.get_mut(&r) else {
                if g[r].is_negative() {
                    g.iter_mut().for_each(|x| *x = -std::mem::take(x));
                }
                self.basis.insert(r, g);
                return;
            };
            let eg = b[r].extended_gcd(&g[r]);
            let (bq, gq) = (&b[r] / &eg.gcd, &g[r] / &eg.gcd);
            // [x y; gq -bq] is unimodular.
            let new_b: Vec<BigInt> = b.iter().zip(&g).map(|(bi, gi)| &eg.x * bi + &eg.y * gi).collect();
            let rest: Vec<BigInt> = b.iter().zip(&g).map(|(bi, gi)| &gq * bi - &bq * gi).collect();
            *b = new_b;
            if b[r].is_negative() {
                b.iter_mut().for_each(|x| *x = -std::mem::take(x));
            }
            if let Some(m) = modulus {
                // The pivot is a gcd of entries below the modulus, so it
                // survives reduction; the remaining entries may be reduced
                // because the span always contains modulus * Z^n.
                reduce_mod(b, m);
                debug_assert!(!b[r].is_zero());
            }
            g = rest;
        }
    }

    fn normalize(&mut self) {
        let pivots: Vec<usize> = self.basis.keys().copied().collect();
        for (idx, &r) in pivots.iter().enumerate() {
            let piv_vec = self.basis[&r].clone();
            let piv = piv_vec[r].clone();
            for &earlier in &pivots[..idx] {
                let v = self.basis.get_mut(&earlier).unwrap();
                let q = v[r].div_floor(&piv);
                if !q.is_zero() {
                    for (x, y) in v.iter_mut().zip(&piv_vec) {
                        *x -= &q * y;
                    }
                }
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.basis.values().cloned().collect()
    }

    /// Membership by back-substitution along the echelon basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (&r, b) in &self.basis {
            if let Some(lead) = leading(&v) {
                if lead < r {
                    return false;
                }
            } else {
                return true;
            }
            if v[r].is_zero() {
                continue;
            }
            if !v[r].is_multiple_of(&b[r]) {
                return false;
            }
            let c = &v[r] / &b[r];
            for (x, y) in v.iter_mut().zip(b) {
                *x -= &c * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis.values().all(|b| other.contains(b))
    }

    /// `dim_{F_p} (L + pZ^n) / pZ^n`.
    pub fn reduction_dim(&self, p: Prime) -> usize {
        if self.basis.is_empty() {
            return 0;
        }
        let cols: Vec<BigInt> = self.basis.values().flat_map(|v| v.iter().cloned()).collect();
        let m = IntMatrix::from_entries(self.basis.len(), self.dim, cols).unwrap();
        rank_mod_p(&m, p)
    }
}

fn pow(p: Prime, i: usize) -> BigInt {
    num_traits::pow(BigInt::from(p.get()), i)
}

/// Generators of `M_i` modulo `p^i`, found by valuation-pivoted elimination
/// over `Z/p^i` with the column transform tracked.
fn filtration_m_generators(m: &IntMatrix, p: Prime, i: usize) -> Vec<Vec<BigInt>> {
    let (rows, cols) = (m.rows(), m.cols());
    let q = pow(p, i);
    let mut a: Vec<BigInt> = m.entries().iter().map(|x| x.mod_floor(&q)).collect();
    // transform columns: xform[j] is the preimage currently in column j
    let mut xform: Vec<Vec<BigInt>> =
        (0..cols).map(|j| (0..cols).map(|k| if j == k { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let val = |x: &BigInt| -> Option<usize> {
        if x.is_zero() {
            None
        } else {
            Some(valuation(x, p.get()) as usize)
        }
    };
    let mut pivot_vals = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if let Some(v) = val(&a[r * cols + c]) {
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((r, c, v));
                    }
                }
            }
        }
        let Some((pr, pc, v)) = best else { break };
        if pr != t {
            for c in 0..cols {
                a.swap(pr * cols + c, t * cols + c);
            }
        }
        if pc != t {
            for r in 0..rows {
                a.swap(r * cols + pc, r * cols + t);
            }
            xform.swap(pc, t);
        }
        let pv = pow(p, v);
        let unit_inv = inv_mod(&(&a[t * cols + t] / &pv), &q);
        for r in t + 1..rows {
            if a[r * cols + t].is_zero() {
                continue;
            }
            let f = ((&a[r * cols + t] / &pv) * &unit_inv).mod_floor(&q);
            for c in t..cols {
                let s = &f * &a[t * cols + c];
                a[r * cols + c] = (&a[r * cols + c] - s).mod_floor(&q);
            }
        }
        for c in t + 1..cols {
            if a[t * cols + c].is_zero() {
                continue;
            }
            let f = ((&a[t * cols + c] / &pv) * &unit_inv).mod_floor(&q);
            for r in t..rows {
                let s = &f * &a[r * cols + t];
                a[r * cols + c] = (&a[r * cols + c] - s).mod_floor(&q);
            }
            let src = xform[t].clone();
            for (x, y) in xform[c].iter_mut().zip(&src) {
                *x = (&*x - &f * y).mod_floor(&q);
            }
        }
        pivot_vals.push(v);
        t += 1;
    }
    xform
        .into_iter()
        .enumerate()
        .map(|(j, col)| match pivot_vals.get(j) {
            Some(&v) if v < i => {
                let scale = pow(p, i - v);
                col.into_iter().map(|x| x * &scale).collect()
            }
            _ => col,
        })
        .collect()
}

/// Integral basis of `M_i = { x in Z^n : m x = 0 mod p^i }`.
pub fn filtration_m(m: &IntMatrix, p: Prime, i: usize) -> Lattice {
    let n = m.cols();
    if i == 0 {
        return Lattice::scaled_standard(n, &BigInt::one());
    }
    Lattice::from_generators_mod(n, filtration_m_generators(m, p, i), &pow(p, i))
}

/// Integral basis of `N_i = p^-i m(M_i)`.
pub fn filtration_n(m: &IntMatrix, p: Prime, i: usize) -> Lattice {
    let q = pow(p, i);
    let images = filtration_m(m, p, i).basis().into_iter().map(|b| {
        m.mul_vec(&b)
            .into_iter()
            .map(|y| {
                debug_assert!(y.is_multiple_of(&q));
                y / &q
            })
            .collect()
    });
    Lattice::from_generators(m.rows(), images)
}

/// The saturated lattice `ker(m) ∩ Z^n`, from the column transform of
/// the Smith form.
pub fn kernel_lattice(m: &IntMatrix) -> Lattice {
    let r = snf(m, true);
    let rank = r.rank();
    let (_, q) = r.witnesses.expect("witnesses requested");
    Lattice::from_generators(m.cols(), (rank..m.cols()).map(|j| q.column(j)))
}

/// Residue dimensions of the two filtrations up to `max_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub p: Prime,
    pub max_i: usize,
    #[serde(rename = "dims_M")]
    pub dims_m: Vec<usize>,
    #[serde(rename = "dims_N")]
    pub dims_n: Vec<usize>,
    pub kernel_dim: usize,
    pub pass: bool,
}

/// Computes both filtrations and checks them against the elementary
/// divisor multiplicities `e_i` of `m`:
/// `dim M_i-bar = dim ker + sum_{k >= i} e_k` and
/// `dim N_i-bar = sum_{k <= i} e_k`, for `i = 0..=1 + sum k e_k`.
/// Chain containments and stabilization of `N_i` at the rank are checked too.
pub fn verify_lemma_dims(m: &IntMatrix, p: Prime) -> FiltrationReport {
    let profile = elem_divisor_profile(m, p);
    let rank = profile.rank();
    let kernel_dim = m.cols() - rank;
    let max_i = 1 + profile.total_valuation() as usize;

    let mut dims_m = Vec::with_capacity(max_i + 1);
    let mut dims_n = Vec::with_capacity(max_i + 1);
    let mut pass = true;
    let mut prev: Option<(Lattice, Lattice)> = None;
    for i in 0..=max_i {
        let mi = filtration_m(m, p, i);
        let ni = filtration_n(m, p, i);
        dims_m.push(mi.reduction_dim(p));
        dims_n.push(ni.reduction_dim(p));

        let tail: usize = profile.multiplicities.iter().skip(i).sum();
        let head: usize = profile.multiplicities.iter().take(i + 1).sum();
        pass &= dims_m[i] == kernel_dim + tail && dims_n[i] == head;

        if let Some((pm, pn)) = &prev {
            pass &= mi.is_sublattice_of(pm) && pn.is_sublattice_of(&ni);
        }
        prev = Some((mi, ni));
    }
    pass &= dims_n.last() == Some(&rank);
    FiltrationReport { p, max_i, dims_m, dims_n, kernel_dim, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn p5() -> Prime {
        Prime::new(5).unwrap()
    }

    #[test]
    fn lattice_membership() {
        let l = Lattice::from_generators(3, [big(&[2, 0, 0]), big(&[0, 3, 1]), big(&[4, 3, 1])]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&big(&[2, 3, 1])));
        assert!(l.contains(&big(&[0, -6, -2])));
        assert!(!l.contains(&big(&[1, 0, 0])));
        assert!(!l.contains(&big(&[0, 3, 2])));
        assert!(Lattice::from_generators(2, [big(&[6, 4]), big(&[4, 2])]).contains(&big(&[2, 0])));
    }

    #[test]
    fn modular_generation_agrees_with_plain() {
        let gens = vec![big(&[3, 7, 1]), big(&[2, 2, 5]), big(&[0, 9, 4])];
        let q = BigInt::from(25);
        let a = Lattice::from_generators_mod(3, gens.clone(), &q);
        let mut all = gens;
        for i in 0..3 {
            let mut e = big(&[0, 0, 0]);
            e[i] = q.clone();
            all.push(e);
        }
        let b = Lattice::from_generators(3, all);
        assert_eq!(a, b);
    }

    #[test]
    fn m_filtration_examples() {
        let p = p5();
        let m = IntMatrix::from_diagonal(&[5, 25, 0]);
        assert_eq!(filtration_m(&m, p, 1).reduction_dim(p), 3);
        let m2 = filtration_m(&m, p, 2);
        assert_eq!(m2.reduction_dim(p), 2);
        assert_eq!(m2, Lattice::from_generators(3, [big(&[5, 0, 0]), big(&[0, 1, 0]), big(&[0, 0, 1])]));
        let id = filtration_m(&IntMatrix::identity(2), p, 1);
        assert_eq!(id, Lattice::scaled_standard(2, &BigInt::from(5)));
        assert_eq!(id.reduction_dim(p), 0);
    }

    #[test]
    fn n_filtration_examples() {
        let p = p5();
        let m = IntMatrix::from_diagonal(&[5, 25, 0]);
        let n1 = filtration_n(&m, p, 1);
        assert_eq!(n1, Lattice::from_generators(3, [big(&[1, 0, 0]), big(&[0, 5, 0])]));
        assert_eq!(n1.reduction_dim(p), 1);
        let n2 = filtration_n(&m, p, 2);
        assert_eq!(n2, Lattice::from_generators(3, [big(&[1, 0, 0]), big(&[0, 1, 0])]));
        assert_eq!(filtration_n(&IntMatrix::zeros(3, 3), p, 2).rank(), 0);
    }

    #[test]
    fn lemma_on_diagonal() {
        let r = verify_lemma_dims(&IntMatrix::from_diagonal(&[5, 25, 0]), p5());
        assert!(r.pass);
        assert_eq!(r.dims_m[..4], [3, 3, 2, 1]);
        assert_eq!(r.dims_n[..4], [0, 1, 2, 2]);
        assert_eq!(r.kernel_dim, 1);
    }

    #[test]
    fn lemma_on_rectangular() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 6, 8], vec![1, 3, 5, 7], vec![4, 4, 4, 4]]);
        for p in [2, 3, 5] {
            let r = verify_lemma_dims(&m, Prime::new(p).unwrap());
            assert!(r.pass, "p = {p}: {r:?}");
        }
    }

    #[test]
    fn kernel_is_saturated() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 6], vec![4, 8, 12]]);
        let k = kernel_lattice(&m);
        assert_eq!(k.rank(), 2);
        assert!(k.contains(&big(&[-2, 1, 0])));
        assert!(k.contains(&big(&[-3, 0, 1])));
        assert_eq!(k.reduction_dim(Prime::new(2).unwrap()), 2);
    }
}
