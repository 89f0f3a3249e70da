//! Constraint analysis of the critical group of a strongly regular graph
//! from its parameters alone.
//!
//! Substituting `A = kI - L` into the strongly-regular identity gives
//! `(L - cI)L = -wI + mu*J`. On the sum-zero sublattice `J` vanishes, so
//! every elementary divisor divides `w`. For a prime `q`, each Laplacian
//! eigenvalue of q-adic valuation `j` contributes an eigenvector lattice of
//! full residue dimension inside both `M_j` and `N_j`, bounding partial
//! sums of the multiplicities `e_i`. Together with the total count and the
//! valuation of the spanning-tree count, this pins the q-part of the group
//! to a few one-parameter families.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::critical::predicted_order_from_spectrum;
use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::graph::{srg_spectrum, Graph, SrgParams, SrgSpectrum};
use crate::lattice::{filtration_m, filtration_n, kernel_lattice};
use crate::linalg::{ElemDivisorProfile, IntMatrix};
use crate::prime::Prime;

type Q = Ratio<i128>;

/// `(L - shift*I) L = -w*I + j_coefficient*J` for every graph with the
/// given parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaplacianIdentity {
    #[serde(rename = "c")]
    pub shift: i64,
    pub w: i64,
    pub w_factored: Factorization,
    #[serde(rename = "mu")]
    pub j_coefficient: i64,
}

impl LaplacianIdentity {
    /// Checks the identity entrywise on an actual graph.
    pub fn holds_for(&self, g: &Graph) -> bool {
        let l = g.laplacian_matrix();
        let n = g.n();
        let shifted = l.add_scaled(&IntMatrix::identity(n), &BigInt::from(-self.shift)).unwrap();
        let lhs = &shifted * &l;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let rhs = BigInt::from(self.j_coefficient) - if i == j { BigInt::from(self.w) } else { BigInt::zero() };
                lhs[(i, j)] == rhs
            })
        })
    }
}

impl fmt::Display for LaplacianIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = if self.j_coefficient == 1 { "J".to_string() } else { format!("{}J", self.j_coefficient) };
        write!(f, "(L - {}I)L = -({})I + {}", self.shift, self.w_factored, j)
    }
}

/// Expands `(kI - L)^2 = kI + lambda(kI - L) + mu(J - (kI - L) - I)`:
/// `c = 2k - lambda + mu` and `w = k^2 - k - lambda k + mu k + mu`, which
/// equals `v * mu` by the parameter identity.
pub fn derive_laplacian_identity(p: &SrgParams) -> Result<LaplacianIdentity> {
    let p = SrgParams::new(p.v, p.k, p.lambda, p.mu)?;
    if p.mu < 1 {
        return Err(Error::InfeasibleParameters("mu = 0 gives a disconnected graph".into()));
    }
    let (k, lambda, mu) = (p.k, p.lambda, p.mu);
    let shift = 2 * k - lambda + mu;
    let w = k * k - k - lambda * k + mu * k + mu;
    debug_assert_eq!(w, p.v * mu);
    Ok(LaplacianIdentity { shift, w, w_factored: Factorization::of_u64(w as u64), j_coefficient: mu })
}

/// Prime powers that may occur as elementary divisors of the critical group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorBound {
    /// prime -> largest allowed exponent
    pub max_exponent: BTreeMap<u64, u64>,
}

impl DivisorBound {
    pub fn exponent(&self, q: u64) -> u64 {
        self.max_exponent.get(&q).copied().unwrap_or(0)
    }

    /// All allowed elementary divisors, by prime then exponent.
    pub fn allowed(&self) -> Vec<u64> {
        self.max_exponent.iter().flat_map(|(&p, &e)| (1..=e).map(move |j| p.pow(j as u32))).collect()
    }
}

/// Every elementary divisor divides `w`.
pub fn divisor_bound(id: &LaplacianIdentity) -> DivisorBound {
    DivisorBound { max_exponent: id.w_factored.as_map().clone() }
}

/// Outcome of the divisor bound for a single prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Forced {
    /// `q` does not divide the group order.
    Absent,
    /// Only `q` itself is allowed, so the q-part is `(Z/q)^count`.
    Elementary(u64),
    /// Higher powers are allowed; see [`enumerate_families`].
    Open,
}

/// Context shared by the per-prime analyses.
struct Setup {
    params: SrgParams,
    spectrum: SrgSpectrum,
    order: Factorization,
    bound: DivisorBound,
}

fn setup(p: &SrgParams) -> Result<Setup> {
    let id = derive_laplacian_identity(p)?;
    let spectrum = srg_spectrum(p)?;
    let order = predicted_order_from_spectrum(&spectrum, p.v)?;
    Ok(Setup { params: *p, spectrum, order, bound: divisor_bound(&id) })
}

fn forced_in(s: &Setup, q: Prime) -> Result<Forced> {
    let val = s.order.exponent(q.get());
    let top = s.bound.exponent(q.get());
    if val == 0 {
        return Ok(Forced::Absent);
    }
    match top {
        0 => Err(Error::Contradiction(format!("{q} divides the group order but not w"))),
        1 if val > (s.params.v - 1) as u64 => {
            Err(Error::Contradiction(format!("{val} copies of Z/{q} exceed the rank {}", s.params.v - 1)))
        }
        1 => Ok(Forced::Elementary(val)),
        _ => Ok(Forced::Open),
    }
}

pub fn forced_multiplicities(p: &SrgParams, q: Prime) -> Result<Forced> {
    forced_in(&setup(p)?, q)
}

/// Which filtration an eigenvector lattice is contained in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `mult <= dim N_j-bar = e_0 + ... + e_j`
    Image,
    /// `mult <= dim M_j-bar = kernel + e_j + e_{j+1} + ...`
    Domain,
}

/// One rank inequality contributed by a Laplacian eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankInequality {
    pub eigenvalue: i64,
    pub multiplicity: i64,
    pub level: usize,
    pub side: Side,
}

impl RankInequality {
    fn coefficients(&self, top: usize) -> (Vec<i64>, i64) {
        // sum_k coeff_k e_k >= rhs
        let coeffs = (0..=top)
            .map(|k| match self.side {
                Side::Image => (k <= self.level) as i64,
                Side::Domain => (k >= self.level) as i64,
            })
            .collect();
        let rhs = match self.side {
            Side::Image => self.multiplicity,
            Side::Domain => self.multiplicity - 1,
        };
        (coeffs, rhs)
    }

    pub fn holds(&self, e: &[i64]) -> bool {
        let (c, rhs) = self.coefficients(e.len() - 1);
        c.iter().zip(e).map(|(a, b)| a * b).sum::<i64>() >= rhs
    }
}

/// The linear system on `e_0..e_top` for a prime `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintSystem {
    pub q: Prime,
    pub top: usize,
    /// `sum e_i`, the rank of the Laplacian (one zero invariant factor).
    pub rank: i64,
    /// `sum i * e_i`, the q-adic valuation of the group order.
    pub valuation: i64,
    pub inequalities: Vec<RankInequality>,
}

impl ConstraintSystem {
    fn build(s: &Setup, q: Prime) -> Self {
        let top = s.bound.exponent(q.get()) as usize;
        let mut inequalities = Vec::new();
        for (lam, mult) in s.spectrum.laplacian_eigenvalues() {
            // Irrational eigenvalues (conference graphs) contribute nothing.
            let Some(lam) = lam.as_integer() else { continue };
            if lam == 0 || mult == 0 {
                continue;
            }
            let j = crate::factor::valuation(&BigInt::from(lam), q.get()) as usize;
            inequalities.push(RankInequality { eigenvalue: lam, multiplicity: mult, level: j, side: Side::Image });
            if j > 0 {
                inequalities.push(RankInequality { eigenvalue: lam, multiplicity: mult, level: j, side: Side::Domain });
            }
        }
        ConstraintSystem { q, top, rank: s.params.v - 1, valuation: s.order.exponent(q.get()) as i64, inequalities }
    }

    /// Whether a multiplicity vector (padded to `top + 1`) satisfies
    /// every equation and inequality.
    pub fn admits(&self, e: &[i64]) -> bool {
        if e.len() != self.top + 1 || e.iter().any(|&x| x < 0) {
            return false;
        }
        e.iter().sum::<i64>() == self.rank
            && e.iter().enumerate().map(|(i, &x)| i as i64 * x).sum::<i64>() == self.valuation
            && self.inequalities.iter().all(|c| c.holds(e))
    }

    /// Complementary pairs `Image(s)` + `Domain(s+1)` whose left sides add
    /// up to `rank + 1`, with their slack.
    fn splits(&self) -> Vec<Split> {
        let mut out = Vec::new();
        for s in 0..self.top {
            let low = self.inequalities.iter().filter(|c| c.level <= s).map(|c| c.multiplicity).max();
            let high = self.inequalities.iter().filter(|c| c.level > s).map(|c| c.multiplicity).max();
            if let (Some(a), Some(b)) = (low, high) {
                out.push(Split { level: s, low: a, slack: self.rank + 1 - a - b });
            }
        }
        out.sort_by_key(|sp| (sp.slack, sp.level));
        out
    }
}

/// `e_0 + ... + e_level = low + delta` for `delta` in `0..=slack`.
#[derive(Clone, Copy, Debug)]
struct Split {
    level: usize,
    low: i64,
    slack: i64,
}

/// `constant + slope * t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Affine {
    pub constant: i64,
    pub slope: i64,
}

impl Affine {
    pub fn at(&self, t: i64) -> i64 {
        self.constant + self.slope * t
    }

    fn render(&self, var: &str) -> String {
        render_affine(&Ratio::from_integer(self.constant as i128), &Ratio::from_integer(self.slope as i128), var)
    }
}

/// Affine expression with rational coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalAffine {
    pub constant: Q,
    pub slope: Q,
}

impl RationalAffine {
    pub fn render(&self, var: &str) -> String {
        render_affine(&self.constant, &self.slope, var)
    }
}

fn render_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn render_affine(c: &Q, s: &Q, var: &str) -> String {
    let term = |s: &Q| {
        let a = s.abs();
        if a.is_one() {
            var.to_string()
        } else {
            format!("{}*{var}", render_q(&a))
        }
    };
    match (c.is_zero(), s.is_zero()) {
        (_, true) => render_q(c),
        (true, false) => {
            if s.is_negative() {
                format!("-{}", term(s))
            } else {
                term(s)
            }
        }
        (false, false) if s.is_positive() && c.is_negative() => format!("{} - {}", term(s), render_q(&c.abs())),
        (false, false) => {
            let sign = if s.is_negative() { "-" } else { "+" };
            format!("{} {sign} {}", render_q(c), term(s))
        }
    }
}

/// One family of multiplicity vectors `(e_0, ..., e_top)` affine in an
/// integer parameter `t` over an inclusive range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFamily {
    pub case_label: usize,
    pub q: Prime,
    /// Index of the multiplicity the parameter stands for, when `t = e_i`.
    pub parameter_index: Option<usize>,
    pub t_range: (i64, i64),
    pub e: Vec<Affine>,
    /// `e_1..e_top` as functions of the q-rank `e_0`, when `e_0` varies.
    pub as_function_of_rank: Option<Vec<RationalAffine>>,
    /// The defining split `e_0 + ... + e_level = value`, if any.
    pub split: Option<(usize, i64)>,
}

impl SolutionFamily {
    pub fn at(&self, t: i64) -> Vec<i64> {
        self.e.iter().map(|a| a.at(t)).collect()
    }

    pub fn parameter_name(&self) -> String {
        match self.parameter_index {
            Some(i) => format!("t = e_{i}"),
            None => "t".to_string(),
        }
    }

    /// The parameter value producing `e`, if any.
    pub fn locate(&self, e: &[i64]) -> Option<i64> {
        if e.len() > self.e.len() && e[self.e.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        let padded: Vec<i64> = (0..self.e.len()).map(|i| e.get(i).copied().unwrap_or(0)).collect();
        let t = match self.e.iter().zip(&padded).find(|(a, _)| a.slope != 0) {
            Some((a, &x)) => {
                let num = x - a.constant;
                if num % a.slope != 0 {
                    return None;
                }
                num / a.slope
            }
            None => self.t_range.0,
        };
        (self.t_range.0 <= t && t <= self.t_range.1 && self.at(t) == padded).then_some(t)
    }

    pub fn e0_range(&self) -> (i64, i64) {
        let a = self.e[0].at(self.t_range.0);
        let b = self.e[0].at(self.t_range.1);
        (a.min(b), a.max(b))
    }

    pub fn describe(&self) -> Vec<String> {
        self.e.iter().enumerate().map(|(i, a)| format!("e_{i} = {}", a.render("t"))).collect()
    }

    pub fn describe_in_rank(&self) -> Option<Vec<String>> {
        self.as_function_of_rank
            .as_ref()
            .map(|v| v.iter().enumerate().map(|(i, a)| format!("e_{} = {}", i + 1, a.render("e_0"))).collect())
    }
}

/// Gaussian elimination on `rows` (coefficients then rhs). Returns the
/// solution as affine expressions in the single free variable (the
/// highest-index non-pivot column), or the number of free variables if
/// there is more than one, or `None` if inconsistent.
/// Per-variable (constant, slope) in the free parameter, and which variable is free.
type Parametrized = (Vec<(Q, Q)>, Option<usize>);

fn solve(rows: &[(Vec<i64>, i64)], nvars: usize) -> std::result::Result<Parametrized, Option<usize>> {
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|(c, r)| c.iter().map(|&x| Q::from_integer(x as i128)).chain([Q::from_integer(*r as i128)]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nvars {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col];
                let src = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(src) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[nvars].is_zero()) {
        return Err(None);
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    if free.len() > 1 {
        return Err(Some(free.len()));
    }
    let param = free.first().copied();
    let mut sol = vec![(Q::zero(), Q::zero()); nvars];
    if let Some(f) = param {
        sol[f] = (Q::zero(), Q::one());
    }
    for (i, &pc) in pivots.iter().enumerate() {
        let slope = param.map_or(Q::zero(), |f| -m[i][f]);
        sol[pc] = (m[i][nvars], slope);
    }
    Ok((sol, param))
}

fn rank_of(rows: &[(Vec<i64>, i64)], nvars: usize) -> usize {
    let mut m: Vec<Vec<Q>> =
        rows.iter().map(|(c, _)| c.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect();
    let mut r = 0;
    for col in 0..nvars {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, pr);
        for i in r + 1..m.len() {
            let f = m[i][col] / m[r][col];
            let src = m[r].clone();
            for (x, y) in m[i].iter_mut().zip(src) {
                *x -= f * y;
            }
        }
        r += 1;
    }
    r
}

fn ceil_q(x: Q) -> i128 {
    x.ceil().to_integer()
}

fn floor_q(x: Q) -> i128 {
    x.floor().to_integer()
}

/// Builds the integer family for one solved case, or `None` if no integer
/// parameter value satisfies every constraint.
fn family_from_solution(
    sys: &ConstraintSystem,
    sol: &[(Q, Q)],
    param: Option<usize>,
    case_label: usize,
    split: Option<(usize, i64)>,
) -> Option<SolutionFamily> {
    let n = sys.top + 1;
    // every constraint as alpha + beta * t >= 0
    let mut cons: Vec<(Q, Q)> = sol.to_vec();
    for ineq in &sys.inequalities {
        let (c, rhs) = ineq.coefficients(sys.top);
        let mut a = Q::from_integer(-(rhs as i128));
        let mut b = Q::zero();
        for (k, &ck) in c.iter().enumerate() {
            a += sol[k].0 * Q::from_integer(ck as i128);
            b += sol[k].1 * Q::from_integer(ck as i128);
        }
        cons.push((a, b));
    }
    let (mut lo, mut hi) = (i128::MIN, i128::MAX);
    for (a, b) in &cons {
        if b.is_zero() {
            if a.is_negative() {
                return None;
            }
        } else if b.is_positive() {
            lo = lo.max(ceil_q(-a / b));
        } else {
            hi = hi.min(floor_q(-a / b));
        }
    }
    if param.is_none() {
        lo = 0;
        hi = 0;
    }
    // integrality: t in t0 + step * Z
    let step: i128 = sol.iter().fold(1i128, |acc, (_, b)| acc.lcm(b.denom()));
    let integral = |t: i128| sol.iter().all(|(a, b)| (a + b * Q::from_integer(t)).is_integer());
    let t0 = (lo..lo.saturating_add(step)).take_while(|&t| t <= hi).find(|&t| integral(t))?;
    if t0 > hi {
        return None;
    }
    let count = (hi - t0) / step;
    let e: Vec<Affine> = sol
        .iter()
        .map(|(a, b)| {
            let c = a + b * Q::from_integer(t0);
            let s = b * Q::from_integer(step);
            Affine { constant: c.to_integer().to_i64().unwrap(), slope: s.to_integer().to_i64().unwrap() }
        })
        .collect();
    debug_assert_eq!(e.len(), n);
    let as_function_of_rank = (e[0].slope != 0).then(|| {
        let s0 = Q::from_integer(e[0].slope as i128);
        let c0 = Q::from_integer(e[0].constant as i128);
        e[1..]
            .iter()
            .map(|a| {
                let slope = Q::from_integer(a.slope as i128) / s0;
                RationalAffine { constant: Q::from_integer(a.constant as i128) - slope * c0, slope }
            })
            .collect()
    });
    let mut fam = SolutionFamily {
        case_label,
        q: sys.q,
        parameter_index: if step == 1 { param } else { None },
        t_range: (0, count.to_i64().unwrap()),
        e,
        as_function_of_rank,
        split,
    };
    if step == 1 && t0 != 0 {
        // keep t equal to the free multiplicity
        for a in fam.e.iter_mut() {
            a.constant -= a.slope * t0 as i64;
        }
        fam.t_range = (t0 as i64, (t0 + count) as i64);
    }
    Some(fam)
}

/// The constraint system for `q`, as used by [`enumerate_families`].
pub fn constraint_system(p: &SrgParams, q: Prime) -> Result<ConstraintSystem> {
    Ok(ConstraintSystem::build(&setup(p)?, q))
}

/// All maximal families of multiplicity vectors `(e_0, ..., e_top)` of the
/// q-part of the critical group compatible with the divisor bound, the
/// eigenvalue rank inequalities, the rank and the order.
pub fn enumerate_families(p: &SrgParams, q: Prime) -> Result<Vec<SolutionFamily>> {
    let s = setup(p)?;
    forced_in(&s, q)?;
    families_in(&s, q)
}

fn families_in(s: &Setup, q: Prime) -> Result<Vec<SolutionFamily>> {
    let sys = ConstraintSystem::build(s, q);
    let nvars = sys.top + 1;
    let mut rows: Vec<(Vec<i64>, i64)> = vec![(vec![1; nvars], sys.rank), ((0..nvars as i64).collect(), sys.valuation)];
    let mut chosen: Vec<Split> = Vec::new();
    for sp in sys.splits() {
        if sp.slack < 0 {
            return Err(Error::Contradiction(format!(
                "rank inequalities at level {} exceed the total rank by {}",
                sp.level, -sp.slack
            )));
        }
        if nvars - rank_of(&rows, nvars) <= 1 {
            break;
        }
        let candidate: Vec<i64> = (0..nvars).map(|k| (k <= sp.level) as i64).collect();
        let mut trial = rows.clone();
        trial.push((candidate.clone(), 0));
        if rank_of(&trial, nvars) > rank_of(&rows, nvars) {
            rows.push((candidate, 0));
            chosen.push(sp);
        }
    }
    let free = nvars - rank_of(&rows, nvars);
    if free > 1 {
        return Err(Error::Underdetermined(free));
    }

    let base = rows.len() - chosen.len();
    let mut families = Vec::new();
    let mut deltas = vec![0i64; chosen.len()];
    loop {
        for (i, sp) in chosen.iter().enumerate() {
            rows[base + i].1 = sp.low + deltas[i];
        }
        if let Ok((sol, param)) = solve(&rows, nvars) {
            let split = chosen.first().map(|sp| (sp.level, rows[base].1));
            if let Some(f) = family_from_solution(&sys, &sol, param, families.len() + 1, split) {
                families.push(f);
            }
        }
        // next delta vector, lexicographic
        let mut i = chosen.len();
        loop {
            if i == 0 {
                if families.is_empty() {
                    return Err(Error::Contradiction(format!(
                        "no multiplicity vector satisfies the constraints at {q}"
                    )));
                }
                return Ok(families);
            }
            i -= 1;
            if deltas[i] < chosen[i].slack {
                deltas[i] += 1;
                deltas[i + 1..].iter_mut().for_each(|d| *d = 0);
                break;
            }
        }
    }
}

/// Which family contains the profile, with the parameter value.
pub fn family_membership(profile: &ElemDivisorProfile, fams: &[SolutionFamily]) -> Option<(usize, i64)> {
    let e: Vec<i64> = profile.multiplicities.iter().map(|&x| x as i64).collect();
    family_membership_of(&e, fams)
}

pub fn family_membership_of(e: &[i64], fams: &[SolutionFamily]) -> Option<(usize, i64)> {
    fams.iter().find_map(|f| f.locate(e).map(|t| (f.case_label, t)))
}

/// Full analysis of one parameter set.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub params: SrgParams,
    pub spectrum: SrgSpectrum,
    pub identity: LaplacianIdentity,
    pub bound: DivisorBound,
    pub order: Factorization,
    /// prime -> count of `Z/prime` summands, for primes capped at exponent 1
    pub forced: BTreeMap<u64, u64>,
    /// Number of even invariant factors, when the 2-part is determined.
    pub bicycle_dim: Option<u64>,
    pub families: BTreeMap<u64, Vec<SolutionFamily>>,
}

/// Runs the analysis. Families are enumerated for `primes`, or when empty,
/// for every prime of the order whose allowed exponent exceeds 1.
pub fn analyze(p: &SrgParams, primes: &[Prime]) -> Result<Analysis> {
    let identity = derive_laplacian_identity(p)?;
    let s = setup(p)?;
    let mut forced = BTreeMap::new();
    let mut open = Vec::new();
    for r in s.order.primes() {
        let r = Prime::new(r).unwrap();
        match forced_in(&s, r)? {
            Forced::Elementary(c) => {
                forced.insert(r.get(), c);
            }
            Forced::Open => open.push(r),
            Forced::Absent => {}
        }
    }
    let bicycle_dim = match forced_in(&s, Prime::new(2).unwrap())? {
        Forced::Absent => Some(0),
        Forced::Elementary(c) => Some(c),
        Forced::Open => None,
    };
    let targets = if primes.is_empty() { open } else { primes.to_vec() };
    let mut families = BTreeMap::new();
    for q in targets {
        forced_in(&s, q)?;
        families.insert(q.get(), families_in(&s, q)?);
    }
    Ok(Analysis {
        params: *p,
        spectrum: s.spectrum,
        identity,
        bound: s.bound,
        order: s.order,
        forced,
        bicycle_dim,
        families,
    })
}

/// Concrete check of the eigenvector-lattice containments on an actual
/// graph, for one Laplacian eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenLatticeCheck {
    pub eigenvalue: i64,
    pub multiplicity: i64,
    pub level: usize,
    pub lattice_rank: usize,
    pub reduction_dim: usize,
    pub in_image_filtration: bool,
    pub in_domain_filtration: bool,
    pub image_dim: usize,
    pub domain_dim: usize,
}

/// For each integral Laplacian eigenvalue `lambda = q^j u` of `g`, computes
/// the saturated eigenvector lattice `X`, and checks `X` is contained in
/// `M_j` and `uX` in `N_j` (so `X ⊆ N_j` after tensoring with the q-adic
/// integers), with the residue dimension of `X` equal to its rank.
pub fn verify_eigenlattice_containments(g: &Graph, p: &SrgParams, q: Prime) -> Result<Vec<EigenLatticeCheck>> {
    let spectrum = srg_spectrum(p)?;
    let l = g.laplacian_matrix();
    let n = g.n();
    let mut out = Vec::new();
    for (lam, mult) in spectrum.laplacian_eigenvalues() {
        let Some(lam) = lam.as_integer() else { continue };
        let j = crate::factor::valuation(&BigInt::from(lam), q.get()) as usize;
        let unit = BigInt::from(lam) / num_traits::pow(BigInt::from(q.get()), j);
        let shifted = l.add_scaled(&IntMatrix::identity(n), &BigInt::from(-lam))?;
        let x = kernel_lattice(&shifted);
        let mj = filtration_m(&l, q, j);
        let nj = filtration_n(&l, q, j);
        let basis = x.basis();
        out.push(EigenLatticeCheck {
            eigenvalue: lam,
            multiplicity: mult,
            level: j,
            lattice_rank: x.rank(),
            reduction_dim: x.reduction_dim(q),
            in_domain_filtration: basis.iter().all(|b| mj.contains(b)),
            in_image_filtration: basis.iter().all(|b| {
                let scaled: Vec<BigInt> = b.iter().map(|v| v * &unit).collect();
                nj.contains(&scaled)
            }),
            image_dim: nj.reduction_dim(q),
            domain_dim: mj.reduction_dim(q),
        });
    }
    Ok(out)
}
