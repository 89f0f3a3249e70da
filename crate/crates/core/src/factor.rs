use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Prime factorization of a positive integer, as prime -> exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Factorization(BTreeMap<u64, u64>);

impl Factorization {
    pub fn one() -> Self {
        Factorization(BTreeMap::new())
    }

    /// Factors `n > 0` by trial division.
    pub fn of_u64(mut n: u64) -> Self {
        assert!(n > 0, "cannot factor zero");
        let mut f = BTreeMap::new();
        let mut d = 2u64;
        while d.saturating_mul(d) <= n {
            while n.is_multiple_of(d) {
                *f.entry(d).or_insert(0) += 1;
                n /= d;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if n > 1 {
            *f.entry(n).or_insert(0) += 1;
        }
        Factorization(f)
    }

    /// Trial division of `|n|` by primes up to `bound`. Returns the partial
    /// factorization and the unfactored cofactor (1 when complete).
    pub fn of_bigint(n: &BigInt, bound: u64) -> (Self, BigInt) {
        assert!(!n.is_zero(), "cannot factor zero");
        let mut n = n.abs();
        let mut f = BTreeMap::new();
        let mut d = 2u64;
        while d <= bound {
            let bd = BigInt::from(d);
            if &bd * &bd > n {
                break;
            }
            loop {
                let (q, r) = n.div_rem(&bd);
                if !r.is_zero() {
                    break;
                }
                *f.entry(d).or_insert(0) += 1;
                n = q;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if n > BigInt::one() {
            let bd = BigInt::from(d);
            if &bd * &bd > n {
                if let Some(p) = n.to_u64() {
                    *f.entry(p).or_insert(0) += 1;
                    return (Factorization(f), BigInt::one());
                }
            }
        }
        (Factorization(f), n)
    }

    pub fn exponent(&self, p: u64) -> u64 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.0.iter().map(|(&p, &e)| (p, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, p: u64, e: u64) {
        if e > 0 {
            *self.0.entry(p).or_insert(0) += e;
        }
    }

    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut out = self.clone();
        for (p, e) in other.iter() {
            out.insert(p, e);
        }
        out
    }

    pub fn pow(&self, k: u64) -> Factorization {
        Factorization(self.0.iter().filter(|_| k > 0).map(|(&p, &e)| (p, e * k)).collect())
    }

    /// `self / other`, or `None` if the quotient is not an integer.
    pub fn checked_div(&self, other: &Factorization) -> Option<Factorization> {
        let mut out = self.0.clone();
        for (p, e) in other.iter() {
            let have = out.get(&p).copied().unwrap_or(0);
            if have < e {
                return None;
            }
            if have == e {
                out.remove(&p);
            } else {
                out.insert(p, have - e);
            }
        }
        Some(Factorization(out))
    }

    pub fn value(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, (&p, &e)| acc * num_traits::pow(BigInt::from(p), e as usize))
    }

    pub fn as_map(&self) -> &BTreeMap<u64, u64> {
        &self.0
    }
}

impl FromIterator<(u64, u64)> for Factorization {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut f = Factorization::one();
        for (p, e) in iter {
            f.insert(p, e);
        }
        f
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero is infinite");
    let bp = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&bp);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}
