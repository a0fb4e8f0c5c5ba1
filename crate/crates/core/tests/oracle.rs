mod common;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use popgraph::format::parse_popg;
use popgraph::graph::{edge_poset, validate_processive};
use popgraph::oracle::{
    catalog_graphs, converse_for_graph, converse_search, linear_extensions, planar_orders, random_processive,
    sweep_pops, theorem_sweep, Budget, GraphCatalogSpec, IndexExtensions, OracleError,
};
use popgraph::order::ConjugateVerdict;
use popgraph::par::Execution;
use popgraph::{check_conjugate, check_p1, check_p2, conjugate_relation, FinitePoset, LinearOrder};

fn names(orders: impl Iterator<Item = LinearOrder>) -> Vec<Vec<String>> {
    orders.map(|o| o.as_slice().to_vec()).collect()
}

fn assert_matches_oracle(poset: &FinitePoset) {
    let exts: Vec<Vec<usize>> = IndexExtensions::new(poset, false).collect();
    assert_eq!(
        exts,
        oracle_orders(poset, false),
        "extensions of {:?}",
        poset.relation_pairs()
    );
    let planar: Vec<Vec<usize>> = IndexExtensions::new(poset, true).collect();
    assert_eq!(
        planar,
        oracle_orders(poset, true),
        "planar orders of {:?}",
        poset.relation_pairs()
    );
}

#[test]
fn permutation_oracle_sanity() {
    assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    assert_eq!(permutations(3).len(), 6);
    assert_eq!(permutations(5).len(), 120);
    let all: BTreeSet<Vec<usize>> = permutations(4).into_iter().collect();
    assert_eq!(all.len(), 24);
}

#[test]
fn labeled_poset_counts() {
    let counts: Vec<usize> = (0..=4).map(|n| all_posets(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 3, 19, 219]);
}

#[test]
fn extensions_match_oracle_on_all_small_posets() {
    for n in 0..=4 {
        for poset in all_posets(n) {
            assert_matches_oracle(&poset);
        }
    }
}

#[test]
fn extensions_match_oracle_on_catalog_edge_posets() {
    for g in catalog_graphs(&GraphCatalogSpec::up_to_edges(5)).unwrap() {
        assert_matches_oracle(&edge_poset(&g));
    }
}

#[test]
fn extensions_match_oracle_on_random_six_element_posets() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let elements: Vec<String> = (0..6).map(|i| format!("x{i}")).collect();
    for _ in 0..200 {
        // Random cover pairs, always from a lower to a higher index.
        let mut pairs = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                if rng.gen_bool(0.3) {
                    pairs.push((elements[i].clone(), elements[j].clone()));
                }
            }
        }
        let poset = FinitePoset::from_cover(elements.clone(), pairs).unwrap();
        assert_matches_oracle(&poset);
    }
}

#[test]
fn extension_examples() {
    let anti = FinitePoset::new(["a", "b"], []).unwrap();
    assert_eq!(linear_extensions(&anti).count(), 2);
    assert_eq!(planar_orders(&anti).count(), 2);

    let chain = FinitePoset::from_cover(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
    assert_eq!(linear_extensions(&chain).count(), 1);

    let vee = FinitePoset::new(["a", "b", "c"], [("a", "c"), ("b", "c")]).unwrap();
    assert_eq!(
        names(linear_extensions(&vee)),
        vec![vec!["a", "b", "c"], vec!["b", "a", "c"]]
    );

    let split = FinitePoset::new(["a", "b", "c"], [("a", "c")]).unwrap();
    assert_eq!(linear_extensions(&split).count(), 3);
    let planar = names(planar_orders(&split));
    assert_eq!(planar.len(), 2);
    assert!(!planar.contains(&vec!["a".into(), "b".into(), "c".into()]));
}

#[test]
fn fixture_order_is_a_planar_order() {
    let pop = fixture_pop();
    let first = planar_orders(pop.edge_poset()).next().unwrap();
    let expected: Vec<String> = (1..=19).map(|i| i.to_string()).collect();
    assert_eq!(first.as_slice(), expected.as_slice());
}

#[test]
fn conjugacy_matches_planarity_on_small_posets() {
    for n in 0..=4 {
        for poset in all_posets(n) {
            for perm in permutations(n) {
                let ord = LinearOrder::from_indices(poset.elements(), &perm);
                let planar = check_p1(&poset, &ord).unwrap().is_empty() && check_p2(&poset, &ord).unwrap().is_empty();
                let rel = conjugate_relation(&poset, &ord).unwrap();
                let conjugate = check_conjugate(&poset, &rel).unwrap() == ConjugateVerdict::Conjugate;
                assert_eq!(
                    planar,
                    conjugate,
                    "{:?} under {:?}",
                    poset.relation_pairs(),
                    ord.as_slice()
                );
            }
        }
    }
}

#[test]
fn catalog_small_sizes() {
    let one = catalog_graphs(&GraphCatalogSpec::up_to_edges(1)).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].edge_count(), 1);

    let two = catalog_graphs(&GraphCatalogSpec::up_to_edges(2)).unwrap();
    let shapes: BTreeSet<(usize, usize, usize)> = two
        .iter()
        .map(|g| (g.vertex_count(), g.edge_count(), g.components().1))
        .collect();
    // single edge, path of two edges, two disjoint edges
    assert_eq!(shapes, BTreeSet::from([(2, 1, 1), (3, 2, 1), (4, 2, 2)]));
    // a parallel pair has a source of out-degree two, so it never appears
    assert!(!two.iter().any(|g| g.vertex_count() == 2 && g.edge_count() == 2));

    // s -> v, v -> t1, v -> t2 has degree-one leaves and belongs in the catalog
    let three = catalog_graphs(&GraphCatalogSpec::up_to_edges(3)).unwrap();
    let fork = processive(
        &["s1", "v1", "t1", "t2"],
        &[("e1", "s1", "v1"), ("e2", "v1", "t1"), ("e3", "v1", "t2")],
    );
    assert!(three.contains(&fork));
}

#[test]
fn catalog_growth_is_stable() {
    let counts: Vec<usize> = (1..=5)
        .map(|m| catalog_graphs(&GraphCatalogSpec::up_to_edges(m)).unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 3, 8, 23, 76]);
    let connected: Vec<usize> = (1..=5)
        .map(|m| {
            catalog_graphs(&GraphCatalogSpec::up_to_edges(m).connected_only())
                .unwrap()
                .len()
        })
        .collect();
    assert_eq!(connected, vec![1, 2, 5, 14, 45]);
}

#[test]
fn catalog_rejects_empty_spec() {
    let err = catalog_graphs(&GraphCatalogSpec::up_to_edges(0)).unwrap_err();
    assert!(matches!(err, OracleError::InvalidSpec(_)));
}

#[test]
fn random_generator_examples() {
    let tiny = random_processive(0, 0, 99);
    assert_eq!((tiny.vertex_count(), tiny.edge_count()), (2, 1));

    let g = random_processive(3, 1, 42);
    assert!(validate_processive(g.graph().clone()).is_ok());
    assert_eq!(random_processive(3, 1, 42), g);
}

#[test]
fn sweep_examples() {
    let single = theorem_sweep(&GraphCatalogSpec::up_to_edges(1), Execution::Sequential, 10).unwrap();
    assert_eq!((single.graphs, single.orders, single.failures.len()), (1, 1, 0));
    for m in [3, 5] {
        let s = theorem_sweep(&GraphCatalogSpec::up_to_edges(m), Execution::Parallel, 1_000_000).unwrap();
        assert!(s.failures.is_empty(), "{m} edges: {} failures", s.failures.len());
    }
}

#[test]
fn sweep_modes_agree() {
    let spec = GraphCatalogSpec::up_to_edges(5);
    let seq = theorem_sweep(&spec, Execution::Sequential, 1_000_000).unwrap();
    let par = theorem_sweep(&spec, Execution::Parallel, 1_000_000).unwrap();
    assert_eq!((seq.graphs, seq.orders), (par.graphs, par.orders));
    assert_eq!((seq.graphs, seq.orders), (76, 505));
}

#[test]
fn sweep_budget_is_enforced() {
    let err = theorem_sweep(&GraphCatalogSpec::up_to_edges(4), Execution::Parallel, 10).unwrap_err();
    assert_eq!(err, OracleError::BudgetExceeded { limit: 10 });
}

#[test]
fn sweep_reports_failures_in_catalog_order() {
    let graphs = catalog_graphs(&GraphCatalogSpec::up_to_edges(3)).unwrap();
    let s = sweep_pops(&graphs, Execution::Parallel, 1000, |pop| {
        (pop.graph().edge_count() == 2).then(|| pop.edge_order().as_slice().join(" "))
    })
    .unwrap();
    let gs: Vec<usize> = s.failures.iter().map(|f| f.graph).collect();
    let mut sorted = gs.clone();
    sorted.sort();
    assert_eq!(gs, sorted);
    assert!(!gs.is_empty());
}

#[test]
fn converse_examples() {
    let budget = Budget::new(100);
    let single = processive(&["a", "b"], &[("e1", "a", "b")]);
    let r = converse_for_graph(&single, &budget).unwrap();
    assert_eq!((r.vertex_planar_orders, r.induced_orders), (1, 1));
    assert!(!r.has_witness());

    let pair = processive(&["a", "b", "c", "d"], &[("e1", "a", "b"), ("e2", "c", "d")]);
    let r = converse_for_graph(&pair, &budget).unwrap();
    assert!(r.induced_orders <= r.vertex_planar_orders);
    assert_eq!(r.vertex_planar_orders - r.induced_orders, r.witnesses.len());
}

#[test]
fn converse_has_no_witness_below_seven_edges() {
    let reports = converse_search(&GraphCatalogSpec::up_to_edges(6), Execution::Parallel, 1_000_000).unwrap();
    assert!(reports.iter().all(|r| !r.has_witness()));
}

#[test]
fn converse_witness_fixture() {
    let text = std::fs::read_to_string(fixture_path("converse_witness.popg")).unwrap();
    let doc = parse_popg(&text).unwrap();
    let g = validate_processive(doc.graph).unwrap();
    let r = converse_for_graph(&g, &Budget::new(1000)).unwrap();
    assert_eq!((r.vertex_planar_orders, r.induced_orders), (6, 4));
    let split = |s: &str| s.split(' ').map(String::from).collect::<Vec<_>>();
    assert_eq!(
        r.witnesses,
        vec![split("s1 v1 v2 t1 v3 t3 t2"), split("s1 v1 v2 t2 v3 t3 t1")]
    );

    // The missing orders really are planar on the vertex poset.
    let vp = popgraph::graph::vertex_poset(&g);
    for w in &r.witnesses {
        let ord = LinearOrder::new(w.iter().cloned()).unwrap();
        assert!(check_p1(&vp, &ord).unwrap().is_empty());
        assert!(check_p2(&vp, &ord).unwrap().is_empty());
    }
}
