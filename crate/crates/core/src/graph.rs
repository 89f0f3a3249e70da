//! Simple graphs, the known Moore graphs, and strongly-regular-graph
//! parameter algebra.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A simple undirected graph on vertices `0..n`. Edges are kept in
/// insertion order with the smaller endpoint first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    seen: HashSet<(usize, usize)>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), seen: HashSet::new() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        let e = (u.min(v), u.max(v));
        if !self.seen.insert(e) {
            return Err(Error::DuplicateEdge(e.0, e.1));
        }
        self.edges.push(e);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.seen.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn component_count(&self) -> usize {
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let adj = self.neighbors();
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = BigInt::from(1);
            a[(v, u)] = BigInt::from(1);
        }
        a
    }

    /// `L = D - A`.
    pub fn laplacian_matrix(&self) -> IntMatrix {
        let mut l = IntMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            l[(u, v)] = BigInt::from(-1);
            l[(v, u)] = BigInt::from(-1);
        }
        for (v, d) in self.degrees().into_iter().enumerate() {
            l[(v, v)] = BigInt::from(d);
        }
        l
    }

    /// Parses an edge list: a header `n m`, then `m` lines `u v` (0-based).
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty edge list".into() })?;
        let (n, m) = parse_pair(header, hl)?;
        let mut g = Graph::empty(n);
        let mut count = 0;
        for (ln, line) in lines {
            let (u, v) = parse_pair(line, ln)?;
            g.add_edge(u, v).map_err(|e| Error::Parse { line: ln, msg: e.to_string() })?;
            count += 1;
        }
        if count != m {
            return Err(Error::Parse { line: hl, msg: format!("header promises {m} edges, found {count}") });
        }
        Ok(g)
    }

    /// Edge list in the format read by [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// Outer 5-cycle `0..5`, spokes `i ~ i+5`, inner pentagram on `5..10`.
    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    /// Robertson's construction: pentagons `P_h` (vertex `5h + j`, with
    /// `j ~ j±1`), pentagrams `Q_i` (vertex `25 + 5i + j`, with `j ~ j±2`),
    /// and vertex `j` of `P_h` joined to vertex `h*i + j` of `Q_i`, all
    /// indices mod 5.
    pub fn hoffman_singleton() -> Graph {
        let p = |h: usize, j: usize| 5 * h + j % 5;
        let q = |i: usize, j: usize| 25 + 5 * i + j % 5;
        let mut edges = Vec::with_capacity(175);
        for h in 0..5 {
            for j in 0..5 {
                edges.push((p(h, j), p(h, j + 1)));
                edges.push((q(h, j), q(h, j + 2)));
            }
        }
        for h in 0..5 {
            for i in 0..5 {
                for j in 0..5 {
                    edges.push((p(h, j), q(i, h * i + j)));
                }
            }
        }
        Graph::from_edges(50, edges).unwrap()
    }
}

fn parse_pair(line: &str, ln: usize) -> Result<(usize, usize)> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::Parse { line: ln, msg: format!("expected two integers, got {line:?}") });
    }
    let p = |s: &str| s.parse::<usize>().map_err(|e| Error::Parse { line: ln, msg: format!("{s:?}: {e}") });
    Ok((p(toks[0])?, p(toks[1])?))
}

/// The Moore graph of diameter 2 and valency `k`: the 5-cycle,
/// the Petersen graph, or the Hoffman-Singleton graph.
pub fn moore_graph(k: usize) -> Result<Graph> {
    match k {
        2 => Ok(Graph::cycle(5)),
        3 => Ok(Graph::petersen()),
        7 => Ok(Graph::hoffman_singleton()),
        57 => Err(Error::MooreExistenceUnknown),
        _ => Err(Error::UnknownMooreGraph(k)),
    }
}

/// Parameters `(v, k, lambda, mu)` of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub v: i64,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
}

impl SrgParams {
    pub fn new(v: i64, k: i64, lambda: i64, mu: i64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InfeasibleParameters(msg));
        if !(v > k && k >= mu && mu >= 0 && lambda >= 0) {
            return bad(format!("need v > k >= mu >= 0 and lambda >= 0, got ({v},{k},{lambda},{mu})"));
        }
        if k > 0 && lambda >= k {
            return bad(format!("lambda = {lambda} must be below k = {k}"));
        }
        if k * (k - lambda - 1) != (v - k - 1) * mu {
            return bad(format!(
                "k(k - lambda - 1) = {} but (v - k - 1)mu = {}",
                k * (k - lambda - 1),
                (v - k - 1) * mu
            ));
        }
        Ok(SrgParams { v, k, lambda, mu })
    }

    /// Parameters of a diameter-2 Moore graph of valency `k`.
    pub fn moore(k: i64) -> Result<Self> {
        SrgParams::new(k * k + 1, k, 0, 1)
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// An exact number `(a + b*sqrt(d)) / 2`. When `b == 0` the value is the
/// rational `a / 2`; eigenvalues of strongly regular graphs always have
/// even `a` in that case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticIrrational {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

impl QuadraticIrrational {
    pub fn integer(x: i64) -> Self {
        QuadraticIrrational { a: 2 * x, b: 0, d: 0 }
    }

    pub fn as_integer(&self) -> Option<i64> {
        (self.b == 0 && self.a % 2 == 0).then_some(self.a / 2)
    }

    /// `c - self`.
    pub fn subtract_from(&self, c: i64) -> Self {
        QuadraticIrrational { a: 2 * c - self.a, b: -self.b, d: self.d }
    }

    /// Approximation, for display and ordering only.
    pub fn approx(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.d as f64).sqrt()) / 2.0
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.as_integer() {
            return write!(f, "{x}");
        }
        match self.b {
            0 => write!(f, "{}/2", self.a),
            1 => write!(f, "({}+sqrt({}))/2", self.a, self.d),
            -1 => write!(f, "({}-sqrt({}))/2", self.a, self.d),
            b if b < 0 => write!(f, "({}-{}*sqrt({}))/2", self.a, -b, self.d),
            b => write!(f, "({}+{}*sqrt({}))/2", self.a, b, self.d),
        }
    }
}

/// Adjacency spectrum of a strongly regular graph: `k` once, then the
/// restricted eigenvalues `theta > tau` with their multiplicities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SrgSpectrum {
    pub k: i64,
    pub theta: QuadraticIrrational,
    pub tau: QuadraticIrrational,
    pub m_theta: i64,
    pub m_tau: i64,
}

impl SrgSpectrum {
    /// Nonzero Laplacian eigenvalues `k - theta`, `k - tau` with multiplicities.
    pub fn laplacian_eigenvalues(&self) -> [(QuadraticIrrational, i64); 2] {
        [(self.theta.subtract_from(self.k), self.m_theta), (self.tau.subtract_from(self.k), self.m_tau)]
    }

    /// `(k - theta)(k - tau)`, always an integer.
    pub fn laplacian_norm(&self) -> i64 {
        let l1 = self.theta.subtract_from(self.k);
        let l2 = self.tau.subtract_from(self.k);
        // The sqrt(d) terms cancel: either b = 0 or the two are conjugates.
        (l1.a * l2.a + l1.b * l2.b * l1.d) / 4
    }
}

fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Restricted eigenvalues and multiplicities from the parameters, exactly.
pub fn srg_spectrum(p: &SrgParams) -> Result<SrgSpectrum> {
    let SrgParams { v, k, lambda, mu } = *p;
    let s = lambda - mu;
    let disc = s * s + 4 * (k - mu);
    let infeasible = |msg: String| Err(Error::InfeasibleParameters(msg));
    match exact_sqrt(disc) {
        Some(r) => {
            if r == 0 {
                return infeasible("restricted eigenvalues coincide".into());
            }
            let (theta, tau) = ((s + r) / 2, (s - r) / 2);
            let num = -k - (v - 1) * tau;
            if num % r != 0 {
                return infeasible(format!("multiplicity {num}/{r} is not an integer"));
            }
            let m_theta = num / r;
            let m_tau = v - 1 - m_theta;
            if m_theta < 0 || m_tau < 0 {
                return infeasible(format!("negative multiplicity ({m_theta}, {m_tau})"));
            }
            Ok(SrgSpectrum {
                k,
                theta: QuadraticIrrational::integer(theta),
                tau: QuadraticIrrational::integer(tau),
                m_theta,
                m_tau,
            })
        }
        None => {
            if 2 * k + (v - 1) * s != 0 || (v - 1) % 2 != 0 {
                return infeasible(format!("irrational eigenvalues sqrt({disc}) without conference parameters"));
            }
            let m = (v - 1) / 2;
            Ok(SrgSpectrum {
                k,
                theta: QuadraticIrrational { a: s, b: 1, d: disc },
                tau: QuadraticIrrational { a: s, b: -1, d: disc },
                m_theta: m,
                m_tau: m,
            })
        }
    }
}

/// Whether `A^2 = kI + lambda A + mu (J - A - I)` holds entrywise.
pub fn check_srg(g: &Graph, p: &SrgParams) -> bool {
    let n = g.n();
    if n as i64 != p.v {
        return false;
    }
    let mut a = vec![0i64; n * n];
    for &(u, v) in g.edges() {
        a[u * n + v] = 1;
        a[v * n + u] = 1;
    }
    for i in 0..n {
        for j in 0..n {
            let sq: i64 = (0..n).map(|t| a[i * n + t] * a[t * n + j]).sum();
            let expected = if i == j {
                p.k
            } else if a[i * n + j] == 1 {
                p.lambda
            } else {
                p.mu
            };
            if sq != expected {
                return false;
            }
        }
    }
    true
}
