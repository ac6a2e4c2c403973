use proptest::prelude::*;
use vedom::graph::{canonical_form, distance_matrix, enumerate_trees, random_tree, TreeEnumConfig};
use vedom::lewis::{
    audit, audit_all, corrected_value, lewis_value, search_counterexamples, subdivide, AuditReport,
};
use vedom::oracles::{gamma_ve_bruteforce, OracleConfig};
use vedom::Graph;

/// Smallest number of originals within distance `r` of every target of `T'`,
/// by plain subset enumeration over a distance matrix.
fn direct_min(t: &Graph, subdivision_only: bool) -> usize {
    let s = subdivide(t).unwrap();
    let d = distance_matrix(&s.tree);
    let n = t.n();
    let targets: Vec<usize> = if subdivision_only {
        (n..s.tree.n()).collect()
    } else {
        (0..s.tree.n()).collect()
    };
    (0u32..1 << n)
        .filter(|&mask| {
            targets
                .iter()
                .all(|&v| (0..n).any(|u| mask >> u & 1 == 1 && d[u][v] <= 3))
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

fn domination_number(t: &Graph) -> usize {
    let n = t.n();
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n).all(|v| mask >> v & 1 == 1 || t.neighbors(v).any(|u| mask >> u & 1 == 1))
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

fn reverify(r: &AuditReport) {
    let t = Graph::from_edges(r.n, &r.edges).unwrap();
    assert_eq!(canonical_form(&t).unwrap().0, r.canonical);
    let g = gamma_ve_bruteforce(&t, &OracleConfig::default())
        .unwrap()
        .cardinality;
    assert_eq!(r.gamma_ve, g);
    assert_eq!(r.lewis_value, Some(direct_min(&t, false)));
    assert_eq!(r.corrected_value, direct_min(&t, true));
    assert_eq!(r.mismatch, r.lewis_value != Some(g));
}

#[test]
fn corrected_value_is_gamma_ve_up_to_ten_vertices() {
    let cfg = OracleConfig::default();
    for n in 1..=10 {
        for t in enumerate_trees(n, true, &TreeEnumConfig::default()).unwrap() {
            let g = gamma_ve_bruteforce(&t, &cfg).unwrap().cardinality;
            assert_eq!(corrected_value(&t, &cfg).unwrap(), g, "{:?}", t.edges());
        }
    }
}

#[test]
fn lewis_value_is_the_domination_number() {
    let cfg = OracleConfig::default();
    for n in 1..=9 {
        for t in enumerate_trees(n, true, &TreeEnumConfig::default()).unwrap() {
            assert_eq!(lewis_value(&t, &cfg).unwrap(), Some(domination_number(&t)));
        }
    }
}

#[test]
fn every_reported_mismatch_is_real() {
    let cfg = OracleConfig::default();
    let all = audit_all(12, &cfg, &TreeEnumConfig::default()).unwrap();
    let found = search_counterexamples(12, &cfg, &TreeEnumConfig::default()).unwrap();
    let expected: Vec<_> = all.iter().filter(|r| r.mismatch).cloned().collect();
    assert_eq!(found, expected);
    assert!(found
        .iter()
        .any(|r| r.gamma_ve == 2 && r.lewis_value.is_some_and(|l| l >= 3)));
    for r in found.iter().filter(|r| r.n <= 10) {
        reverify(r);
    }
    for r in &all {
        assert!(r.lewis_value.unwrap() >= r.corrected_value);
    }
}

#[test]
fn smallest_counterexamples() {
    let cfg = OracleConfig::default();
    let found = search_counterexamples(8, &cfg, &TreeEnumConfig::default()).unwrap();
    // P4: the far end of T' = P7 is at distance 4 from either middle original
    let first = &found[0];
    assert_eq!(first.n, 4);
    assert_eq!(canonical_form(&Graph::path(4)).unwrap().0, first.canonical);
    assert_eq!(
        (first.gamma_ve, first.lewis_value, first.corrected_value),
        (1, Some(2), 1)
    );
    // gamma_ve = 2 with lewis_value = 3 first appears at seven vertices
    let two: Vec<_> = found
        .iter()
        .filter(|r| r.gamma_ve == 2 && r.lewis_value == Some(3))
        .collect();
    assert_eq!(two[0].n, 7);
    assert!(two
        .iter()
        .any(|r| r.canonical == canonical_form(&Graph::path(7)).unwrap().0));
    two.iter().for_each(|r| reverify(r));
    for r in &found {
        let t = Graph::from_edges(r.n, &r.edges).unwrap();
        assert_eq!(&audit(&t, &cfg).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_tree_values_are_ordered(n in 2usize..=14, seed in any::<u64>()) {
        let t = random_tree(n, seed).unwrap();
        let r = audit(&t, &OracleConfig::default()).unwrap();
        prop_assert!(r.lewis_value.unwrap() >= r.corrected_value);
        prop_assert_eq!(r.corrected_value, r.gamma_ve);
        prop_assert!(3 * r.gamma_ve <= n.max(3) || n < 6);
        prop_assert_eq!(subdivide(&t).unwrap().tree.n(), 2 * n - 1);
    }
}
