use std::collections::BTreeSet;

use critlab::graph::{check_srg, Graph, SrgParams};
use critlab::moore::{
    analyze, constraint_system, derive_laplacian_identity, enumerate_families, family_membership, Forced,
};
use critlab::{elem_divisor_profile, Error, Prime};

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

/// Every nonnegative solution of the system for (3250,57,0,1) at 5, found
/// by fixing e_0 and e_3 and solving the two equations for e_1 and e_2.
fn moore57_solutions_by_scan() -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for e0 in 0..=3249i64 {
        for e3 in 0..=3249i64 {
            // e0+e1+e2+e3 = 3249, e1+2e2+3e3 = 4975
            let e2 = 4975 - 3 * e3 - (3249 - e0 - e3);
            let e1 = 3249 - e0 - e3 - e2;
            if e1 < 0 || e2 < 0 {
                continue;
            }
            // eigenvalue 65 (mult 1520, one factor of 5) and 50 (mult 1729, two)
            if e0 + e1 >= 1520 && 1 + e2 + e3 >= 1729 {
                out.insert(vec![e0, e1, e2, e3]);
            }
        }
    }
    out
}

#[test]
fn moore57_families_cover_every_solution() {
    let params = SrgParams::new(3250, 57, 0, 1).unwrap();
    let fams = enumerate_families(&params, prime(5)).unwrap();
    assert_eq!(fams.len(), 2);
    let mut union = BTreeSet::new();
    for f in &fams {
        for t in f.t_range.0..=f.t_range.1 {
            let e = f.at(t);
            assert!(e.iter().all(|&x| x >= 0));
            assert_eq!(e.iter().sum::<i64>() + 1, 3250);
            assert_eq!(e.iter().enumerate().map(|(i, x)| i as i64 * x).sum::<i64>(), 4975);
            assert!(union.insert(e), "families overlap");
        }
    }
    assert_eq!(union, moore57_solutions_by_scan());
}

#[test]
fn forced_multiplicities_match_real_graphs() {
    for (g, k) in [(Graph::cycle(5), 2), (Graph::petersen(), 3), (Graph::hoffman_singleton(), 7)] {
        let params = SrgParams::moore(k).unwrap();
        let l = g.laplacian_matrix();
        let a = analyze(&params, &[]).unwrap();
        for (&q, &count) in &a.forced {
            let prof = elem_divisor_profile(&l, prime(q));
            assert_eq!(prof.multiplicities.len(), 2, "k={k} q={q}");
            assert_eq!(prof.e(1) as u64, count);
        }
        assert_eq!(a.bicycle_dim, Some(critlab::critical::bicycle_dimension(&g) as u64));
    }
}

#[test]
fn forced_at_two() {
    let f = |k| critlab::moore::forced_multiplicities(&SrgParams::moore(k).unwrap(), prime(2)).unwrap();
    assert_eq!(f(7), Forced::Elementary(20));
    assert_eq!(f(3), Forced::Elementary(4));
    assert_eq!(f(2), Forced::Absent);
    assert_eq!(f(57), Forced::Elementary(1728));
}

fn rook(n: usize) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n * n {
        for b in a + 1..n * n {
            if a / n == b / n || a % n == b % n {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n * n, edges).unwrap()
}

fn triangular(n: usize) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut edges = Vec::new();
    for (x, &(a, b)) in pairs.iter().enumerate() {
        for (y, &(c, d)) in pairs.iter().enumerate().skip(x + 1) {
            if a == c || a == d || b == c || b == d {
                edges.push((x, y));
            }
        }
    }
    Graph::from_edges(pairs.len(), edges).unwrap()
}

fn paley(p: usize) -> Graph {
    let squares: BTreeSet<usize> = (1..p).map(|x| x * x % p).collect();
    let edges = (0..p).flat_map(|a| (a + 1..p).map(move |b| (a, b))).filter(|&(a, b)| squares.contains(&(b - a)));
    Graph::from_edges(p, edges.collect::<Vec<_>>()).unwrap()
}

fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| !g.has_edge(a, b));
    Graph::from_edges(n, edges.collect::<Vec<_>>()).unwrap()
}

/// The rank inequalities are sound on every constructible example: the
/// measured profile satisfies the constraint system, and lies in an
/// enumerated family whenever the system reduces to one parameter.
#[test]
fn measured_profiles_satisfy_constraints() {
    let cases: Vec<(&str, Graph, SrgParams)> = vec![
        ("C5", Graph::cycle(5), SrgParams::new(5, 2, 0, 1).unwrap()),
        ("Petersen", Graph::petersen(), SrgParams::new(10, 3, 0, 1).unwrap()),
        ("Petersen complement", complement(&Graph::petersen()), SrgParams::new(10, 6, 3, 4).unwrap()),
        ("Hoffman-Singleton", Graph::hoffman_singleton(), SrgParams::new(50, 7, 0, 1).unwrap()),
        ("rook 3", rook(3), SrgParams::new(9, 4, 1, 2).unwrap()),
        ("rook 4", rook(4), SrgParams::new(16, 6, 2, 2).unwrap()),
        ("rook 5", rook(5), SrgParams::new(25, 8, 3, 2).unwrap()),
        ("triangular 6", triangular(6), SrgParams::new(15, 8, 4, 4).unwrap()),
        ("triangular 7", triangular(7), SrgParams::new(21, 10, 5, 4).unwrap()),
        ("Paley 13", paley(13), SrgParams::new(13, 6, 2, 3).unwrap()),
        ("Paley 17", paley(17), SrgParams::new(17, 8, 3, 4).unwrap()),
    ];
    let mut enumerated = 0;
    for (name, g, params) in cases {
        assert!(check_srg(&g, &params), "{name}");
        let id = derive_laplacian_identity(&params).unwrap();
        assert!(id.holds_for(&g), "{name}");
        let l = g.laplacian_matrix();
        let order = critlab::critical::critical_group(&g).order_factored();
        for q in order.primes() {
            let prof = elem_divisor_profile(&l, prime(q));
            let sys = constraint_system(&params, prime(q)).unwrap();
            assert!(prof.multiplicities.len() <= sys.top + 1, "{name} q={q}: divisor bound violated");
            let mut e: Vec<i64> = prof.multiplicities.iter().map(|&x| x as i64).collect();
            e.resize(sys.top + 1, 0);
            assert!(sys.admits(&e), "{name} q={q}: {e:?} violates {sys:?}");
            match enumerate_families(&params, prime(q)) {
                Ok(fams) => {
                    assert!(family_membership(&prof, &fams).is_some(), "{name} q={q}: {e:?} outside {fams:?}");
                    enumerated += 1;
                }
                Err(Error::Underdetermined(_)) => {}
                Err(other) => panic!("{name} q={q}: {other}"),
            }
        }
    }
    assert!(enumerated >= 10, "only {enumerated} prime cases reduced to families");
}

#[test]
fn infeasible_parameters_are_rejected() {
    assert!(matches!(
        derive_laplacian_identity(&SrgParams { v: 10, k: 3, lambda: 0, mu: 2 }),
        Err(Error::InfeasibleParameters(_))
    ));
    // mu = 0 is a disjoint union of cliques
    assert!(matches!(
        derive_laplacian_identity(&SrgParams { v: 6, k: 2, lambda: 1, mu: 0 }),
        Err(Error::InfeasibleParameters(_))
    ));
    // both satisfy the counting identity but have irrational eigenvalues
    // without being conference graphs
    for (v, k, lambda, mu) in [(9, 4, 0, 3), (9, 4, 2, 1)] {
        let err = analyze(&SrgParams { v, k, lambda, mu }, &[]).unwrap_err();
        assert!(matches!(err, Error::InfeasibleParameters(_)), "{err}");
    }
}
