#![allow(dead_code)]

use std::path::PathBuf;

use popgraph::format::{parse_popg, FIXTURE};
use popgraph::graph::validate_processive;
use popgraph::{make_pop, FinitePoset, PopGraph, ProcessiveGraph};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn bundled_fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/three_components.popg")
}

pub fn load_pop(text: &str) -> PopGraph {
    let doc = parse_popg(text).expect("document parses");
    let g = validate_processive(doc.graph).expect("graph is processive");
    make_pop(g, doc.order).expect("edge order is planar")
}

pub fn fixture_pop() -> PopGraph {
    load_pop(FIXTURE)
}

pub fn processive(vertices: &[&str], edges: &[(&str, &str, &str)]) -> ProcessiveGraph {
    let g = popgraph::DirectedMultigraph::build(
        vertices.iter().copied(),
        edges.iter().map(|&(e, s, t)| popgraph::EdgeRecord::new(e, s, t)),
    )
    .expect("graph builds");
    validate_processive(g).expect("graph is processive")
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(perm.clone());
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// Order-preservation checked straight from the relation matrix.
pub fn naive_extends(poset: &FinitePoset, perm: &[usize]) -> bool {
    (0..perm.len()).all(|j| (0..j).all(|i| !poset.lt(perm[j], perm[i])))
}

/// The betweenness condition checked over every triple.
pub fn naive_betweenness(poset: &FinitePoset, perm: &[usize]) -> bool {
    let n = perm.len();
    for i in 0..n {
        for k in i + 1..n {
            if !poset.lt(perm[i], perm[k]) {
                continue;
            }
            for &mid in &perm[i + 1..k] {
                if !poset.lt(perm[i], mid) && !poset.lt(mid, perm[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// n!-filter oracle: every permutation kept by the given filters, in
/// lexicographic order of index sequences.
pub fn oracle_orders(poset: &FinitePoset, planar_only: bool) -> Vec<Vec<usize>> {
    permutations(poset.len())
        .into_iter()
        .filter(|p| naive_extends(poset, p) && (!planar_only || naive_betweenness(poset, p)))
        .collect()
}

/// Every strict partial order on `n` labeled elements `x0, x1, ...`.
pub fn all_posets(n: usize) -> Vec<FinitePoset> {
    let elements: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    (0u64..1 << slots.len())
        .filter_map(|mask| {
            let mut lt = vec![false; n * n];
            for (bit, &(i, j)) in slots.iter().enumerate() {
                lt[i * n + j] = mask >> bit & 1 == 1;
            }
            FinitePoset::from_matrix(elements.clone(), lt).ok()
        })
        .collect()
}
