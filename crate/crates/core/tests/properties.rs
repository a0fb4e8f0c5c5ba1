use proptest::prelude::*;

use popgraph::format::{parse_popg, serialize_popg};
use popgraph::graph::{edge_poset, validate_processive, vertex_poset};
use popgraph::oracle::{catalog_graphs, planar_orders, random_processive, GraphCatalogSpec};
use popgraph::{induce_vertex_order, make_pop, validate_induced, FinitePoset, PosetError};

fn assert_strict_order(p: &FinitePoset) {
    let n = p.len();
    for i in 0..n {
        assert!(!p.lt(i, i));
        for j in 0..n {
            if p.lt(i, j) {
                assert!(!p.lt(j, i));
                for k in 0..n {
                    if p.lt(j, k) {
                        assert!(p.lt(i, k));
                    }
                }
            }
        }
    }
}

#[test]
fn generator_output_is_processive_over_many_seeds() {
    for seed in 0..1000 {
        let g = random_processive(5, 3, seed);
        assert!(validate_processive(g.graph().clone()).is_ok(), "seed {seed}");
    }
}

#[test]
fn catalog_pops_round_trip_through_text() {
    for g in catalog_graphs(&GraphCatalogSpec::up_to_edges(4)).unwrap() {
        for ord in planar_orders(&edge_poset(&g)) {
            let pop = make_pop(g.clone(), ord).unwrap();
            let doc = parse_popg(&serialize_popg(&pop)).unwrap();
            let back = make_pop(validate_processive(doc.graph).unwrap(), doc.order).unwrap();
            assert_eq!(back, pop);
        }
    }
}

proptest! {
    #[test]
    fn generated_graphs_are_processive(internal in 0usize..8, extra in 0usize..6, seed in any::<u64>()) {
        let g = random_processive(internal, extra, seed);
        prop_assert!(validate_processive(g.graph().clone()).is_ok());
        prop_assert_eq!(&random_processive(internal, extra, seed), &g);
    }

    #[test]
    fn derived_posets_are_strict_orders(internal in 0usize..6, extra in 0usize..4, seed in any::<u64>()) {
        let g = random_processive(internal, extra, seed);
        assert_strict_order(&edge_poset(&g));
        assert_strict_order(&vertex_poset(&g));
    }

    #[test]
    fn cover_closure_is_a_strict_order(bits in proptest::collection::vec(any::<bool>(), 15)) {
        let elements: Vec<String> = (0..6).map(|i| format!("x{i}")).collect();
        let mut pairs = Vec::new();
        let mut bit = bits.iter();
        for i in 0..6 {
            for j in i + 1..6 {
                if *bit.next().unwrap() {
                    pairs.push((elements[i].clone(), elements[j].clone()));
                }
            }
        }
        let p = FinitePoset::from_cover(elements.clone(), pairs).unwrap();
        assert_strict_order(&p);
    }

    #[test]
    fn a_two_cycle_is_rejected(a in "[a-z]{1,4}", b in "[A-Z]{1,4}") {
        let err = FinitePoset::new([a.clone(), b.clone()], [(a.clone(), b.clone()), (b, a)]).unwrap_err();
        prop_assert!(matches!(err, PosetError::Symmetric(..)));
    }

    #[test]
    fn first_planar_order_of_a_random_graph_induces_a_planar_vertex_order(
        internal in 0usize..5,
        extra in 0usize..3,
        seed in any::<u64>(),
    ) {
        let g = random_processive(internal, extra, seed);
        if let Some(ord) = planar_orders(&edge_poset(&g)).next() {
            let pop = make_pop(g, ord).unwrap();
            let report = validate_induced(&pop);
            prop_assert!(report.passed(), "{:?}", report);
            let induced = induce_vertex_order(&pop);
            prop_assert_eq!(induced.as_slice(), report.order.as_slice());
        }
    }
}
