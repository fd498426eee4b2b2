use std::collections::BTreeSet;

use proptest::prelude::*;

use treecone::conespace::{sample_points, solve_coefficients_with_points, Sampling, DEFAULT_BOUND};
use treecone::polyalg::SymbolicBasis;
use treecone::{
    coefficient, compatible, complete_graph, decompose, enumerate_spanning_trees, mismatch, path_tree,
    reorient, sources, OrientedGraph, Permutation,
};

#[test]
fn reoriented_complete_graph_is_a_total_order() {
    for n in 1..=5 {
        let g = complete_graph(n).unwrap();
        for s in Permutation::all(n) {
            let gs = reorient(&g, &s);
            assert!(gs.is_single_source_acyclic());
            for i in 0..=n {
                assert_eq!(gs.in_degree(s.at(i)), i);
            }
        }
    }
}

#[test]
fn natural_orientation_has_in_degree_one() {
    for n in 1..=4 {
        for t in enumerate_spanning_trees(n).unwrap() {
            let nat = t.natural_orientation();
            assert_eq!(sources(&nat), BTreeSet::from([0]));
            assert!((1..=n).all(|v| nat.in_degree(v) == 1));
            let back = t.as_path().map(|s| path_tree(&s));
            if let Some(p) = back {
                assert_eq!(p, t);
            }
        }
    }
}

#[test]
fn distortion_equals_mismatch_on_compatible_orders() {
    for n in 1..=4 {
        for t in enumerate_spanning_trees(n).unwrap() {
            let nat = t.natural_orientation();
            for s in Permutation::all(n) {
                let reoriented = reorient(&t.as_graph(), &s);
                let compat = compatible(&t, &path_tree(&s));
                assert_eq!(reoriented == nat, compat);
                // an incompatible order leaves some non-root vertex without inflow
                assert_eq!(sources(&reoriented).len() > 1, !compat);
                if compat {
                    assert_eq!(mismatch(&t.as_graph(), &s), t.distortion());
                }
            }
        }
    }
}

#[test]
fn support_is_exactly_the_compatible_paths() {
    for n in 1..=4 {
        for t in enumerate_spanning_trees(n).unwrap() {
            let d = decompose(&t);
            for s in Permutation::all(n) {
                let c = coefficient(&t, &s);
                assert_eq!(c != 0, compatible(&t, &path_tree(&s)));
                assert_eq!(d.coefficient(&s), treecone::linalg::rational(c.into()));
            }
        }
    }
}

#[test]
fn symbolic_route_matches_formula_n4() {
    let basis = SymbolicBasis::new(4).unwrap();
    for t in enumerate_spanning_trees(4).unwrap() {
        assert_eq!(basis.crosscheck(&t).unwrap(), decompose(&t).coefficients, "{t}");
        for s in Permutation::all(4) {
            let v = basis.reoriented_complement_value(&t, &s);
            assert!(v == treecone::linalg::rational(0) || v == treecone::linalg::rational(1));
        }
    }
}

#[test]
fn geometric_oracle_matches_formula_n4() {
    let points = sample_points(4, 3, DEFAULT_BOUND, 8 * 24, Sampling::TreeCones).unwrap();
    for t in enumerate_spanning_trees(4).unwrap() {
        assert_eq!(solve_coefficients_with_points(&t, &points).unwrap(), decompose(&t).coefficients, "{t}");
    }
}

fn subgraph(g: &OrientedGraph, mask: u64) -> OrientedGraph {
    OrientedGraph::new(
        g.n(),
        g.edges().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e),
    )
    .unwrap()
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn mismatch_is_additive_over_disjoint_unions(mask in 0u64..(1 << 10), split in 0u64..(1 << 10), s in perm_strategy(4)) {
        let g = complete_graph(4).unwrap();
        let y = subgraph(&g, mask & split);
        let z = subgraph(&g, mask & !split);
        let union = subgraph(&g, mask);
        prop_assert_eq!(mismatch(&union, &s), mismatch(&y, &s) + mismatch(&z, &s));
        prop_assert_eq!(mismatch(&g, &s) - mismatch(&union, &s), mismatch(&g.minus(&union), &s));
    }

    #[test]
    fn compatibility_is_symmetric(a in 0usize..125, b in 0usize..125) {
        let trees = enumerate_spanning_trees(4).unwrap();
        prop_assert_eq!(compatible(&trees[a], &trees[b]), compatible(&trees[b], &trees[a]));
    }
}

#[test]
fn kernel_property_random_subsets_n4() {
    use rand::{Rng, SeedableRng};
    let basis = SymbolicBasis::new(4).unwrap();
    let g = complete_graph(4).unwrap();
    let perms = Permutation::all(4);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for _ in 0..400 {
        let y = subgraph(&g, rng.random_range(0..1u64 << 10));
        let s = &perms[rng.random_range(0..perms.len())];
        let (lhs, rhs) = basis.kernel_property_check(s, &y);
        assert_eq!(lhs, rhs, "s={s} Y={y}");
    }
}
