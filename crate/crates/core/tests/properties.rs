mod common;

use critlab::critical::{critical_group_via_profiles, critical_group_via_snf, spanning_tree_count};
use critlab::factor::Factorization;
use critlab::lattice::verify_lemma_dims;
use critlab::linalg::elem_divisor_profile_with_precision;
use critlab::sandpile::{
    is_recurrent, recurrent_count, recurrent_identity, sandpile_group_structure, stabilize, stabilize_with_order,
    ChipConfig,
};
use critlab::{determinant, elem_divisor_profile, rank_mod_p, snf, Graph, IntMatrix, Prime};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::from_entries(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

/// Matrices of deliberately low rank: a product of two random factors.
fn low_rank_matrix() -> impl Strategy<Value = IntMatrix> {
    (1..=6usize, 1..=6usize, 1..=3usize).prop_flat_map(|(r, c, k)| {
        (prop::collection::vec(-6i64..=6, r * k), prop::collection::vec(-6i64..=6, k * c)).prop_map(move |(a, b)| {
            let a = IntMatrix::from_entries(r, k, a.into_iter().map(BigInt::from).collect()).unwrap();
            let b = IntMatrix::from_entries(k, c, b.into_iter().map(BigInt::from).collect()).unwrap();
            &a * &b
        })
    })
}

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|p| Prime::new(p).unwrap())
}

fn graph() -> impl Strategy<Value = Graph> {
    any::<u64>().prop_map(|seed| common::random_connected_graph(&mut ChaCha8Rng::seed_from_u64(seed), 7, 0.4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn snf_matches_independent_oracle(m in prop_oneof![matrix(6, 12), low_rank_matrix()]) {
        prop_assert_eq!(snf(&m, false).invariant_factors, common::textbook_snf(&m));
    }

    #[test]
    fn snf_witnesses_are_unimodular(m in matrix(5, 9)) {
        let r = snf(&m, true);
        let (p, q) = r.witnesses.clone().unwrap();
        prop_assert!(common::is_unit(&determinant(&p).unwrap()));
        prop_assert!(common::is_unit(&determinant(&q).unwrap()));
        let d = &(&p * &m) * &q;
        prop_assert_eq!(d, r.diagonal(m.rows(), m.cols()));
        let f = &r.invariant_factors;
        for w in f.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }

    #[test]
    fn determinant_is_product_of_invariant_factors(m in (1..=6usize).prop_flat_map(matrix_sq)) {
        let det = determinant(&m).unwrap();
        let prod: BigInt = snf(&m, false).invariant_factors.iter().product();
        prop_assert_eq!(det.abs(), prod);
        prop_assert_eq!(det, BigInt::from(common::laplace_det(&common::small_entries(&m))));
    }

    #[test]
    fn local_profile_matches_snf(m in prop_oneof![matrix(7, 30), low_rank_matrix()], p in prime()) {
        let prof = elem_divisor_profile(&m, p);
        let (e, zeros) = common::profile_of(&snf(&m, false).invariant_factors, p.get());
        prop_assert_eq!(&prof.multiplicities, &e);
        // kernel rank counts the zero invariant factors of min(rows, cols)
        prop_assert_eq!(prof.kernel_rank, zeros);
    }

    #[test]
    fn p_rank_is_unit_multiplicity(m in matrix(7, 30), p in prime()) {
        prop_assert_eq!(rank_mod_p(&m, p), elem_divisor_profile(&m, p).e(0));
    }

    #[test]
    fn lemma_dimensions_hold(m in prop_oneof![matrix(6, 20), low_rank_matrix()], p in prime()) {
        let rep = verify_lemma_dims(&m, p);
        prop_assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn critical_group_routes_agree(g in graph()) {
        let via_snf = critical_group_via_snf(&g);
        prop_assert_eq!(Some(via_snf.clone()), critical_group_via_profiles(&g));
        prop_assert_eq!(&via_snf.order, &spanning_tree_count(&g));
        prop_assert_eq!(via_snf.order.clone(), BigInt::from(common::brute_force_spanning_trees(&g)));
    }

    #[test]
    fn laplacian_profile_with_tree_precision(g in graph(), p in prime()) {
        let l = g.laplacian_matrix();
        let trees = spanning_tree_count(&g);
        let v = critlab::factor::valuation(&trees, p.get()) as u32;
        let fast = elem_divisor_profile_with_precision(&l, p, v + 1, g.n() - 1).unwrap();
        prop_assert_eq!(fast, elem_divisor_profile(&l, p));
    }

    #[test]
    fn recurrents_count_spanning_trees(g in graph(), sink_pick in any::<usize>()) {
        let sink = sink_pick % g.n();
        let trees = spanning_tree_count(&g);
        prop_assert_eq!(BigInt::from(recurrent_count(&g, sink).unwrap()), trees);
    }

    #[test]
    fn sandpile_structure_is_sink_independent(g in graph(), a in any::<usize>(), b in any::<usize>()) {
        let expected = critical_group_via_snf(&g).invariant_factors;
        prop_assert_eq!(sandpile_group_structure(&g, a % g.n()).unwrap(), expected.clone());
        prop_assert_eq!(sandpile_group_structure(&g, b % g.n()).unwrap(), expected);
    }

    #[test]
    fn stabilization_is_order_independent(g in graph(), chips in prop::collection::vec(0u64..12, 7), seed in any::<u64>()) {
        let n = g.n();
        let c = ChipConfig::new(0, chips[..n].to_vec());
        let canonical = stabilize_with_order(&c, &g, |ready| ready[0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shuffled = stabilize_with_order(&c, &g, |ready| ready[rand::Rng::gen_range(&mut rng, 0..ready.len())]).unwrap();
        prop_assert_eq!(&canonical, &shuffled);
        prop_assert!(canonical.config.is_stable(&g));
        prop_assert_eq!(canonical.config, stabilize(&c, &g).unwrap());
    }

    #[test]
    fn identity_is_recurrent_and_neutral(g in graph(), chips in prop::collection::vec(0u64..6, 7)) {
        let n = g.n();
        let e = recurrent_identity(&g, 0).unwrap();
        prop_assert!(is_recurrent(&e, &g).unwrap());
        // any stable configuration plus the maximal one is recurrent
        let deg = g.degrees();
        let max = ChipConfig::new(0, deg.iter().map(|&d| d as u64 - 1).collect());
        let c = ChipConfig::new(0, chips[..n].iter().zip(&deg).map(|(&x, &d)| x % d as u64).collect());
        let r = stabilize(&c.add(&max), &g).unwrap();
        prop_assert!(is_recurrent(&r, &g).unwrap());
        prop_assert_eq!(stabilize(&r.add(&e), &g).unwrap(), r);
    }

    #[test]
    fn bicycles_match_brute_force(g in graph()) {
        prop_assert_eq!(critlab::critical::bicycle_dimension(&g), common::brute_force_bicycle_dim(&g));
    }

    #[test]
    fn edge_list_round_trip(g in graph()) {
        prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn matrix_text_round_trip(m in matrix(5, 1_000_000)) {
        prop_assert_eq!(IntMatrix::parse(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn factorization_reconstructs(n in 1u64..5_000_000) {
        let f = Factorization::of_u64(n);
        prop_assert_eq!(f.value(), BigInt::from(n));
        prop_assert!(f.primes().all(critlab::prime::is_prime));
    }
}

fn matrix_sq(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-9i64..=9, n * n)
        .prop_map(move |v| IntMatrix::from_entries(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
}
