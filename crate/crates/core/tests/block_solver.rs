use proptest::prelude::*;
use vedom::block::{gamma_ve_dp, solve_independent, solve_with, SolveOptions};
use vedom::graph::{enumerate_trees, random_block_graph, BlockGraphParams, TreeEnumConfig};
use vedom::oracles::{gamma_ve_bruteforce, i_ve_bruteforce, is_ve_dominating, OracleConfig};
use vedom::Graph;

const CHECKED: SolveOptions = SolveOptions {
    check_invariants: true,
};

fn params() -> impl Strategy<Value = (usize, u64, BlockGraphParams)> {
    (
        1usize..=14,
        any::<u64>(),
        2usize..=4,
        0usize..=3,
        0.0f64..=1.0,
    )
        .prop_map(|(n, seed, lo, extra, bias)| {
            (
                n,
                seed,
                BlockGraphParams {
                    min_block: lo,
                    max_block: lo + extra,
                    depth_bias: bias,
                },
            )
        })
}

fn check_against_oracle(g: &Graph) {
    let cfg = OracleConfig::default();
    let (r, trace) = solve_with(g, &CHECKED).unwrap();
    assert!(is_ve_dominating(g, &r.set).unwrap());
    assert_eq!(
        r.cardinality,
        gamma_ve_bruteforce(g, &cfg).unwrap().cardinality,
        "{:?}",
        g.edges()
    );
    assert_eq!(trace.replay_checked(g).unwrap(), r.set);
    let ind = solve_independent(g).unwrap();
    assert!(g.is_independent(&ind.set) && is_ve_dominating(g, &ind.set).unwrap());
    assert_eq!(
        ind.cardinality,
        i_ve_bruteforce(g, &cfg).unwrap().cardinality
    );
}

#[test]
fn away_from_cut_blocks_precede_at_cut_blocks() {
    // {4,9} and {1,7,8} sit at the same level with one live edge each;
    // labelling 1 first also covers 4-9
    let g = Graph::from_edges(
        10,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (2, 3),
            (1, 4),
            (1, 5),
            (4, 5),
            (5, 6),
            (1, 7),
            (1, 8),
            (7, 8),
            (4, 9),
        ],
    )
    .unwrap();
    let (r, _) = solve_with(&g, &CHECKED).unwrap();
    assert_eq!(r.set, vec![0, 1]);
    check_against_oracle(&g);
}

#[test]
fn every_tree_up_to_ten() {
    let cfg = TreeEnumConfig::default();
    for n in 1..=10 {
        for t in enumerate_trees(n, true, &cfg).unwrap() {
            check_against_oracle(&t);
        }
    }
}

#[test]
fn every_labelled_tree_on_six_vertices() {
    // labelling changes block ids and hence processing order
    let cfg = TreeEnumConfig::default();
    for t in enumerate_trees(6, false, &cfg).unwrap() {
        check_against_oracle(&t);
    }
}

#[test]
fn dp_agrees_with_reduction_on_large_graphs() {
    let p = BlockGraphParams::default();
    for seed in 0..20 {
        let g = random_block_graph(2000, seed, &p).unwrap();
        let (a, _) = solve_with(&g, &SolveOptions::default()).unwrap();
        let b = gamma_ve_dp(&g).unwrap();
        assert!(is_ve_dominating(&g, &a.set).unwrap());
        assert!(is_ve_dominating(&g, &b.set).unwrap());
        assert_eq!(a.cardinality, b.cardinality, "seed {seed}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_block_graphs_match_oracle((n, seed, p) in params()) {
        let g = random_block_graph(n, seed, &p).unwrap();
        check_against_oracle(&g);
    }

    #[test]
    fn relabelling_preserves_the_optimum((n, seed, p) in params(), shift in 0usize..14) {
        let g = random_block_graph(n, seed, &p).unwrap();
        let perm: Vec<usize> = (0..n).map(|v| (v + shift) % n).collect();
        let h = g.relabel(&perm);
        let a = solve_with(&g, &CHECKED).unwrap().0.cardinality;
        let b = solve_with(&h, &CHECKED).unwrap().0.cardinality;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn bound_of_a_third(seed in any::<u64>(), n in 6usize..400) {
        let g = random_block_graph(n, seed, &BlockGraphParams::default()).unwrap();
        let k = solve_with(&g, &SolveOptions::default()).unwrap().0.cardinality;
        prop_assert!(3 * k <= n);
    }
}
