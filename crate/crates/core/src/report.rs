//! Serializable reports behind the command-line output. Every JSON report
//! starts with `"schema": 1`; keys appear in declaration order and maps
//! are ordered, so identical inputs give byte-identical output.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::critical::{bicycle_dimension, spanning_tree_count, CriticalGroup};
use crate::factor::Factorization;
use crate::graph::{Graph, SrgParams};
use crate::lattice::FiltrationReport;
use crate::linalg::{ElemDivisorProfile, SnfResult};
use crate::moore::{Analysis, SolutionFamily};
use crate::prime::Prime;
use crate::sandpile::ChipConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// Arbitrary-precision integer emitted as a bare JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigNumber(pub BigInt);

impl Serialize for BigNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

fn bigs(v: &[BigInt]) -> Vec<BigNumber> {
    v.iter().cloned().map(BigNumber).collect()
}

fn join<T: fmt::Display>(v: impl IntoIterator<Item = T>, sep: &str) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Adds the schema tag in front of a report body.
#[derive(Serialize)]
pub struct Versioned<'a, T: Serialize> {
    pub schema: u32,
    #[serde(flatten)]
    pub body: &'a T,
}

pub fn to_json<T: Serialize>(body: &T) -> String {
    let mut s = serde_json::to_string_pretty(&Versioned { schema: SCHEMA_VERSION, body }).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphInfo {
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub components: usize,
    /// Common degree, if the graph is regular.
    pub regular_degree: Option<usize>,
    pub girth: Option<usize>,
    pub spanning_trees: BigNumber,
}

impl GraphInfo {
    pub fn of(g: &Graph) -> Self {
        let degs = g.degrees();
        let regular_degree = match degs.first() {
            Some(&d) if degs.iter().all(|&x| x == d) => Some(d),
            _ => None,
        };
        GraphInfo {
            vertices: g.n(),
            edges: g.edge_count(),
            connected: g.is_connected(),
            components: g.component_count(),
            regular_degree,
            girth: g.girth(),
            spanning_trees: BigNumber(spanning_tree_count(g)),
        }
    }
}

impl fmt::Display for GraphInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |x: Option<usize>, none: &str| x.map_or(none.to_string(), |v| v.to_string());
        writeln!(f, "vertices: {}", self.vertices)?;
        writeln!(f, "edges: {}", self.edges)?;
        writeln!(f, "connected: {}", self.connected)?;
        writeln!(f, "components: {}", self.components)?;
        writeln!(f, "regular degree: {}", opt(self.regular_degree, "not regular"))?;
        writeln!(f, "girth: {}", opt(self.girth, "acyclic"))?;
        writeln!(f, "spanning trees: {}", self.spanning_trees.0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CritGroupReport {
    pub order: BigNumber,
    pub order_factored: Factorization,
    pub invariant_factors: Vec<BigNumber>,
    pub free_rank: usize,
    pub bicycle_dim: usize,
}

impl CritGroupReport {
    pub fn of(g: &Graph, cg: &CriticalGroup) -> Self {
        CritGroupReport {
            order: BigNumber(cg.order.clone()),
            order_factored: cg.order_factored(),
            invariant_factors: bigs(&cg.invariant_factors),
            free_rank: cg.free_rank,
            bicycle_dim: bicycle_dimension(g),
        }
    }
}

impl fmt::Display for CritGroupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factored = if self.order_factored.is_one() { "1".to_string() } else { self.order_factored.to_string() };
        writeln!(f, "order: {} = {}", self.order.0, factored)?;
        let inv = if self.invariant_factors.is_empty() {
            "(trivial group)".to_string()
        } else {
            join(self.invariant_factors.iter().map(|x| &x.0), " ")
        };
        writeln!(f, "invariant factors: {inv}")?;
        writeln!(f, "free rank: {}", self.free_rank)?;
        writeln!(f, "bicycle dimension: {}", self.bicycle_dim)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SnfReport {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// All `min(rows, cols)` diagonal entries, zeros included.
    pub invariant_factors: Vec<BigNumber>,
}

impl SnfReport {
    pub fn of(rows: usize, cols: usize, r: &SnfResult) -> Self {
        SnfReport { rows, cols, rank: r.rank(), invariant_factors: bigs(&r.invariant_factors) }
    }
}

impl fmt::Display for SnfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", join(self.invariant_factors.iter().map(|x| &x.0), " "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileReport {
    pub p: Prime,
    /// `multiplicities[i]` is the number of invariant factors with
    /// p-adic valuation exactly `i`.
    pub multiplicities: Vec<usize>,
    pub p_rank: usize,
    pub rank: usize,
    pub kernel_rank: usize,
    pub valuation_of_product: u64,
}

impl ProfileReport {
    pub fn of(p: &ElemDivisorProfile) -> Self {
        ProfileReport {
            p: p.p,
            multiplicities: p.multiplicities.clone(),
            p_rank: p.p_rank(),
            rank: p.rank(),
            kernel_rank: p.kernel_rank,
            valuation_of_product: p.total_valuation(),
        }
    }
}

impl fmt::Display for ProfileReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p: {}", self.p)?;
        let es = self.multiplicities.iter().enumerate().map(|(i, e)| format!("e_{i}={e}"));
        writeln!(f, "multiplicities: {}", join(es, " "))?;
        writeln!(f, "p-rank: {}", self.p_rank)?;
        writeln!(f, "rank: {}", self.rank)?;
        writeln!(f, "kernel rank: {}", self.kernel_rank)?;
        writeln!(f, "valuation of nonzero invariant factors: {}", self.valuation_of_product)
    }
}

impl fmt::Display for FiltrationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p: {}", self.p)?;
        writeln!(f, "kernel dim: {}", self.kernel_dim)?;
        writeln!(f, "{:>4} {:>8} {:>8}", "i", "dim M_i", "dim N_i")?;
        for (i, (m, n)) in self.dims_m.iter().zip(&self.dims_n).enumerate() {
            writeln!(f, "{i:>4} {m:>8} {n:>8}")?;
        }
        writeln!(f, "pass: {}", self.pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SandpileReport {
    pub sink: usize,
    pub recurrent_count: usize,
    pub group_structure: Vec<BigNumber>,
    /// Chips on each vertex of the identity recurrent configuration.
    pub identity: Vec<u64>,
}

impl SandpileReport {
    pub fn new(sink: usize, recurrent_count: usize, structure: &[BigInt], identity: &ChipConfig) -> Self {
        SandpileReport { sink, recurrent_count, group_structure: bigs(structure), identity: identity.chips.clone() }
    }
}

impl fmt::Display for SandpileReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sink: {}", self.sink)?;
        writeln!(f, "recurrent configurations: {}", self.recurrent_count)?;
        let s = if self.group_structure.is_empty() {
            "(trivial group)".to_string()
        } else {
            join(self.group_structure.iter().map(|x| &x.0), " ")
        };
        writeln!(f, "group structure: {s}")?;
        writeln!(f, "identity: {}", join(&self.identity, " "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityJson {
    pub c: i64,
    pub w: i64,
    pub w_factored: Factorization,
    pub mu: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueJson {
    pub value: String,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyJson {
    pub prime: Prime,
    pub case: usize,
    pub parameter: String,
    pub param_range: [i64; 2],
    pub e_exprs: Vec<String>,
    pub e_as_function_of_rank: Option<Vec<String>>,
    pub e0_range: [i64; 2],
}

impl FamilyJson {
    pub fn of(f: &SolutionFamily) -> Self {
        let (lo, hi) = f.e0_range();
        FamilyJson {
            prime: f.q,
            case: f.case_label,
            parameter: f.parameter_name(),
            param_range: [f.t_range.0, f.t_range.1],
            e_exprs: f.describe(),
            e_as_function_of_rank: f.describe_in_rank(),
            e0_range: [lo, hi],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MooreReport {
    pub params: SrgParams,
    pub identity: IdentityJson,
    pub laplacian_spectrum: Vec<EigenvalueJson>,
    pub order_factored: Factorization,
    pub divisor_bound: Vec<u64>,
    pub forced: BTreeMap<u64, u64>,
    pub bicycle_dim: Option<u64>,
    pub families: Vec<FamilyJson>,
}

impl MooreReport {
    pub fn of(a: &Analysis) -> Self {
        let mut laplacian_spectrum = vec![EigenvalueJson { value: "0".into(), multiplicity: 1 }];
        laplacian_spectrum.extend(
            a.spectrum
                .laplacian_eigenvalues()
                .iter()
                .map(|(l, m)| EigenvalueJson { value: l.to_string(), multiplicity: *m }),
        );
        MooreReport {
            params: a.params,
            identity: IdentityJson {
                c: a.identity.shift,
                w: a.identity.w,
                w_factored: a.identity.w_factored.clone(),
                mu: a.identity.j_coefficient,
            },
            laplacian_spectrum,
            order_factored: a.order.clone(),
            divisor_bound: a.bound.allowed(),
            forced: a.forced.clone(),
            bicycle_dim: a.bicycle_dim,
            families: a.families.values().flatten().map(FamilyJson::of).collect(),
        }
    }
}

impl fmt::Display for MooreReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(f, "parameters: srg{p}")?;
        let id = &self.identity;
        let j = if id.mu == 1 { "J".to_string() } else { format!("{}J", id.mu) };
        writeln!(f, "laplacian identity: (L - {}I)L = -({})I + {j}", id.c, id.w_factored)?;
        let spectrum = self.laplacian_spectrum.iter().map(|e| format!("{}^{}", e.value, e.multiplicity));
        writeln!(f, "laplacian spectrum: {}", join(spectrum, ", "))?;
        writeln!(f, "critical group order: {}", self.order_factored)?;
        writeln!(f, "allowed elementary divisors: {}", join(&self.divisor_bound, " "))?;
        let forced = self.forced.iter().map(|(q, m)| format!("(Z/{q})^{m}"));
        writeln!(f, "forced: {}", if self.forced.is_empty() { "none".into() } else { join(forced, " + ") })?;
        match self.bicycle_dim {
            Some(b) => writeln!(f, "bicycle dimension: {b}")?,
            None => writeln!(f, "bicycle dimension: not determined")?,
        }
        for fam in &self.families {
            let [lo, hi] = fam.param_range;
            writeln!(f, "family at {} case {}: {} in [{lo}, {hi}]", fam.prime, fam.case, fam.parameter)?;
            writeln!(f, "  {}", fam.e_exprs.join(", "))?;
            if let Some(r) = &fam.e_as_function_of_rank {
                writeln!(f, "  in terms of e_0 in [{}, {}]: {}", fam.e0_range[0], fam.e0_range[1], r.join(", "))?;
            }
        }
        Ok(())
    }
}
