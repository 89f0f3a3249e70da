//! Reference implementations used to cross-check the library. They are
//! deliberately naive and share no code with it.
#![allow(dead_code, clippy::needless_range_loop)]

use critlab::{Graph, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn small_entries(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| i128::try_from(&m[(i, j)]).expect("small entries")).collect()).collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(a: &[Vec<i128>]) -> i128 {
    let n = a.len();
    match n {
        0 => 1,
        1 => a[0][0],
        2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
        _ => (0..n)
            .filter(|&j| a[0][j] != 0)
            .map(|j| {
                let minor: Vec<Vec<i128>> = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] * laplace_det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors as ratios of determinantal divisors: `d_k` is the gcd
/// of all k x k minors and `s_k = d_k / d_(k-1)`. Zeros pad past the rank.
pub fn determinantal_invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let a = small_entries(m);
    let (r, c) = (m.rows(), m.cols());
    let mut d_prev: i128 = 1;
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g: i128 = 0;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
                g = g.gcd(&laplace_det(&minor));
            }
        }
        if g == 0 {
            out.extend(std::iter::repeat_n(BigInt::zero(), r.min(c) - out.len()));
            break;
        }
        out.push(BigInt::from(g / d_prev));
        d_prev = g;
    }
    out
}

/// Smith normal form by the textbook method: clear the first row and
/// column with extended-gcd (unimodular 2x2) operations, repair
/// divisibility, recurse on the lower-right block.
pub fn textbook_snf(m: &IntMatrix) -> Vec<BigInt> {
    let (r, c) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..r).map(|i| (0..c).map(|j| m[(i, j)].clone()).collect()).collect();
    let mut diag = Vec::new();
    for t in 0..r.min(c) {
        // move any nonzero entry to (t, t)
        let Some((pi, pj)) = (t..r).flat_map(|i| (t..c).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) else {
            diag.extend(std::iter::repeat_n(BigInt::zero(), r.min(c) - t));
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                if a[i][t].is_multiple_of(&a[t][t]) {
                    let f = &a[i][t] / &a[t][t];
                    for j in t..c {
                        let s = &f * &a[t][j];
                        a[i][j] -= s;
                    }
                    changed = true;
                    continue;
                }
                let e = a[t][t].extended_gcd(&a[i][t]);
                let (x, y) = (e.x, e.y);
                let (u, v) = (&a[t][t] / &e.gcd, &a[i][t] / &e.gcd);
                for j in t..c {
                    let (p, q) = (a[t][j].clone(), a[i][j].clone());
                    a[t][j] = &x * &p + &y * &q;
                    a[i][j] = &u * &q - &v * &p;
                }
                changed = true;
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                if a[t][j].is_multiple_of(&a[t][t]) {
                    let f = &a[t][j] / &a[t][t];
                    for row in a.iter_mut().skip(t) {
                        let s = &f * &row[t];
                        row[j] -= s;
                    }
                    changed = true;
                    continue;
                }
                let e = a[t][t].extended_gcd(&a[t][j]);
                let (x, y) = (e.x, e.y);
                let (u, v) = (&a[t][t] / &e.gcd, &a[t][j] / &e.gcd);
                for row in a.iter_mut().skip(t) {
                    let (p, q) = (row[t].clone(), row[j].clone());
                    row[t] = &x * &p + &y * &q;
                    row[j] = &u * &q - &v * &p;
                }
                changed = true;
            }
            if changed {
                continue;
            }
            // divisibility: fold an offending row into row t
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..c {
                        let add = a[i][j].clone();
                        a[t][j] += add;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Multiplicities of each p-adic valuation among nonzero factors, and the
/// number of zero factors.
pub fn profile_of(factors: &[BigInt], p: u64) -> (Vec<usize>, usize) {
    let mut e = Vec::new();
    let mut zeros = 0;
    for f in factors {
        if f.is_zero() {
            zeros += 1;
            continue;
        }
        let mut v = 0;
        let mut x = f.clone();
        let pb = BigInt::from(p);
        while (&x % &pb).is_zero() {
            x /= &pb;
            v += 1;
        }
        if e.len() <= v {
            e.resize(v + 1, 0);
        }
        e[v] += 1;
    }
    (e, zeros)
}

/// Spanning trees by enumerating every (n-1)-edge subset.
pub fn brute_force_spanning_trees(g: &Graph) -> u64 {
    let n = g.n();
    let edges = g.edges();
    if n == 0 {
        return 0;
    }
    let mut count = 0;
    for chosen in subsets(edges.len(), n - 1) {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let acyclic = chosen.iter().all(|&e| {
            let (u, v) = edges[e];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            a != b && {
                parent[a] = b;
                true
            }
        });
        count += acyclic as u64;
    }
    count
}

/// Dimension of the intersection of the cycle and cut spaces over F_2,
/// counting cuts `delta(S)` (with vertex 0 outside S) that are even
/// subgraphs.
pub fn brute_force_bicycle_dim(g: &Graph) -> usize {
    let n = g.n();
    assert!((1..=20).contains(&n));
    let mut cuts = std::collections::HashSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let side = |v: usize| v > 0 && mask >> (v - 1) & 1 == 1;
        let cut: Vec<bool> = g.edges().iter().map(|&(u, v)| side(u) != side(v)).collect();
        let mut deg = vec![0usize; n];
        for (k, &(u, v)) in g.edges().iter().enumerate() {
            if cut[k] {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        if deg.iter().all(|d| d % 2 == 0) {
            cuts.insert(cut);
        }
    }
    let count = cuts.len();
    assert!(count.is_power_of_two());
    count.trailing_zeros() as usize
}

/// Connected graphs on at most 7 vertices used as a fixed test set.
pub fn small_connected_graphs() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in 1..=7 {
        out.push((format!("K{n}"), Graph::complete(n)));
        out.push((format!("P{n}"), Graph::path(n)));
    }
    for n in 3..=7 {
        out.push((format!("C{n}"), Graph::cycle(n)));
        let mut wheel: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        if n <= 6 {
            wheel.extend((0..n).map(|i| (i, n)));
            out.push((format!("W{n}"), Graph::from_edges(n + 1, wheel).unwrap()));
        }
    }
    for (a, b) in [(1, 3), (2, 2), (2, 3), (3, 3), (2, 5), (3, 4)] {
        out.push((format!("K{a},{b}"), Graph::complete_bipartite(a, b)));
    }
    // prism, cube-minus-vertex, bowtie, house
    out.push((
        "prism".into(),
        Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap(),
    ));
    out.push(("bowtie".into(), Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap()));
    out.push(("house".into(), Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)]).unwrap()));
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
    for k in 0..12 {
        out.push((format!("random{k}"), random_connected_graph(&mut rng, 7, 0.45)));
    }
    out
}

/// Random connected graph: a random spanning tree plus each other edge
/// with probability `density`.
pub fn random_connected_graph(rng: &mut impl Rng, max_n: usize, density: f64) -> Graph {
    let n = rng.gen_range(2..=max_n);
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.add_edge(rng.gen_range(0..v), v).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(density) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let entries = (0..r * c).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    IntMatrix::from_entries(r, c, entries).unwrap()
}

pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}
