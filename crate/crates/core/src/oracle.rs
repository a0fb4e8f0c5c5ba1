//! Brute-force enumeration: linear extensions, planar orders, small graph
//! catalogs, random processive graphs, and exhaustive sweeps.
//!
//! # Catalog labeling scheme
//!
//! A processive graph splits into *internal* vertices (in- and out-degree
//! both at least one), degree-one sources and sinks hanging off internal
//! vertices, and isolated edges joining a source directly to a sink. The
//! catalog enumerates, for each number `k` of internal vertices:
//!
//! * a multiset of internal edges `vi → vj` with `i < j` (so `v1..vk` is a
//!   topological labeling),
//! * the number of sources and sinks attached to each internal vertex,
//! * the number of isolated edges.
//!
//! Leaves are interchangeable, so no two catalog entries differ only by a
//! permutation of sources or sinks. Distinct topological labelings of the
//! same internal DAG do produce duplicates; every property checked here is
//! invariant under isomorphism, so duplicates are harmless.
//!
//! Vertices are listed as sources `s1..`, then internal `v1..vk`, then
//! sinks `t1..`; edges are sorted by (source position, target position)
//! and named `e1..em` in that order.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{edge_poset, validate_processive, vertex_poset, DirectedMultigraph, EdgeRecord, ProcessiveGraph};
use crate::induce::{induced_vertex_seq, validate_induced, InducedReport};
use crate::order::p2_holds_at;
use crate::par::{self, Execution};
use crate::pop::PopGraph;
use crate::poset::{FinitePoset, LinearOrder};

/// Default cap on the number of orders a sweep may enumerate.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("invalid catalog spec: {0}")]
    InvalidSpec(String),
    #[error("enumeration budget of {limit} orders exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("induced vertex order [{}] of graph #{graph} is not planar", vertex_order.join(" "))]
    InducedNotPlanar { graph: usize, vertex_order: Vec<String> },
}

/// Backtracking enumerator over index sequences. Candidates at each depth
/// are tried in element index order, so output is lexicographic.
#[derive(Debug, Clone)]
pub struct IndexExtensions<'a> {
    poset: &'a FinitePoset,
    planar_only: bool,
    succ: Vec<Vec<usize>>,
    pending: Vec<usize>,
    placed: Vec<bool>,
    seq: Vec<usize>,
    cursor: Vec<usize>,
    done: bool,
}

impl<'a> IndexExtensions<'a> {
    pub fn new(poset: &'a FinitePoset, planar_only: bool) -> Self {
        let n = poset.len();
        let mut succ = vec![Vec::new(); n];
        let mut pending = vec![0; n];
        for (a, row) in succ.iter_mut().enumerate() {
            for (b, count) in pending.iter_mut().enumerate() {
                if poset.lt(a, b) {
                    row.push(b);
                    *count += 1;
                }
            }
        }
        Self {
            poset,
            planar_only,
            succ,
            pending,
            placed: vec![false; n],
            seq: Vec::with_capacity(n),
            cursor: vec![0; n + 1],
            done: false,
        }
    }

    fn push(&mut self, x: usize) {
        self.placed[x] = true;
        for &y in &self.succ[x] {
            self.pending[y] -= 1;
        }
        self.seq.push(x);
    }

    fn pop(&mut self) {
        let x = self.seq.pop().expect("pop on empty prefix");
        self.placed[x] = false;
        for &y in &self.succ[x] {
            self.pending[y] += 1;
        }
    }
}

impl Iterator for IndexExtensions<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let n = self.poset.len();
        if self.done {
            return None;
        }
        if n == 0 {
            self.done = true;
            return Some(Vec::new());
        }
        loop {
            let d = self.seq.len();
            if d == n {
                let out = self.seq.clone();
                self.pop();
                return Some(out);
            }
            let mut c = self.cursor[d];
            let mut advanced = false;
            while c < n {
                if !self.placed[c] && self.pending[c] == 0 {
                    self.push(c);
                    if !self.planar_only || p2_holds_at(self.poset, &self.seq, d) {
                        advanced = true;
                        break;
                    }
                    self.pop();
                }
                c += 1;
            }
            if advanced {
                self.cursor[d] = c + 1;
                self.cursor[d + 1] = 0;
            } else if d == 0 {
                self.done = true;
                return None;
            } else {
                self.pop();
            }
        }
    }
}

/// Every linear extension of `poset`, each exactly once, in lexicographic
/// order of element indices.
pub fn linear_extensions(poset: &FinitePoset) -> impl Iterator<Item = LinearOrder> + '_ {
    IndexExtensions::new(poset, false).map(move |seq| LinearOrder::from_indices(poset.elements(), &seq))
}

/// The linear extensions of `poset` that satisfy (P2), in the same order as
/// [`linear_extensions`]. Prefixes violating (P2) are pruned.
pub fn planar_orders(poset: &FinitePoset) -> impl Iterator<Item = LinearOrder> + '_ {
    IndexExtensions::new(poset, true).map(move |seq| LinearOrder::from_indices(poset.elements(), &seq))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    All,
    ConnectedOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphCatalogSpec {
    pub max_edges: usize,
    pub max_vertices: usize,
    pub connectivity: Connectivity,
}

impl GraphCatalogSpec {
    /// All graphs with at most `max_edges` edges; the vertex cap is the
    /// largest a processive graph with that many edges can need.
    pub fn up_to_edges(max_edges: usize) -> Self {
        Self {
            max_edges,
            max_vertices: 2 * max_edges,
            connectivity: Connectivity::All,
        }
    }

    pub fn connected_only(mut self) -> Self {
        self.connectivity = Connectivity::ConnectedOnly;
        self
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if self.max_edges < 1 {
            return Err(OracleError::InvalidSpec("max_edges must be at least 1".into()));
        }
        if self.max_vertices < 2 {
            return Err(OracleError::InvalidSpec("max_vertices must be at least 2".into()));
        }
        Ok(())
    }
}

/// Every processive graph within the spec bounds under the catalog labeling
/// scheme, in a fixed order.
pub fn catalog_graphs(spec: &GraphCatalogSpec) -> Result<Vec<ProcessiveGraph>, OracleError> {
    spec.validate()?;
    let mut out = Vec::new();
    // Every internal vertex has an incoming edge and at least one edge ends
    // in a sink, so k internal vertices need at least k + 1 edges, at least
    // two of which are leaf edges.
    for k in 0..spec.max_edges {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let internal_cap = if k == 0 { 0 } else { spec.max_edges - 2 };
        let mut chosen = Vec::new();
        internal_multisets(&pairs, 0, internal_cap, &mut chosen, &mut |internal| {
            attach_leaves(spec, k, internal, &mut out);
        });
    }
    if spec.connectivity == Connectivity::ConnectedOnly {
        out.retain(|g| g.components().1 == 1);
    }
    Ok(out)
}

type VertexPair = (usize, usize);

fn internal_multisets(
    pairs: &[VertexPair],
    from: usize,
    budget: usize,
    chosen: &mut Vec<VertexPair>,
    visit: &mut dyn FnMut(&[VertexPair]),
) {
    visit(chosen);
    if budget == 0 {
        return;
    }
    for p in from..pairs.len() {
        chosen.push(pairs[p]);
        internal_multisets(pairs, p, budget - 1, chosen, visit);
        chosen.pop();
    }
}

fn attach_leaves(spec: &GraphCatalogSpec, k: usize, internal: &[(usize, usize)], out: &mut Vec<ProcessiveGraph>) {
    let mut in_int = vec![0; k];
    let mut out_int = vec![0; k];
    for &(i, j) in internal {
        out_int[i] += 1;
        in_int[j] += 1;
    }
    let min_src: Vec<usize> = in_int.iter().map(|&d| usize::from(d == 0)).collect();
    let min_snk: Vec<usize> = out_int.iter().map(|&d| usize::from(d == 0)).collect();
    let fixed = internal.len() + min_src.iter().sum::<usize>() + min_snk.iter().sum::<usize>();
    if fixed > spec.max_edges {
        return;
    }
    let spare = spec.max_edges - fixed;

    // extras[0..k] extra sources per internal vertex, extras[k..2k] extra sinks.
    let mut extras = vec![0; 2 * k];
    let mut emit = |extras: &[usize], used: usize| {
        for isolated in 0..=spare - used {
            if k == 0 && isolated == 0 {
                continue;
            }
            let src: Vec<usize> = (0..k).map(|i| min_src[i] + extras[i]).collect();
            let snk: Vec<usize> = (0..k).map(|i| min_snk[i] + extras[k + i]).collect();
            let vertices = k + src.iter().sum::<usize>() + snk.iter().sum::<usize>() + 2 * isolated;
            if vertices > spec.max_vertices {
                continue;
            }
            out.push(assemble(k, internal, &src, &snk, isolated));
        }
    };
    distribute(&mut extras, 0, spare, 0, &mut emit);
}

fn distribute(extras: &mut [usize], pos: usize, spare: usize, used: usize, emit: &mut dyn FnMut(&[usize], usize)) {
    if pos == extras.len() {
        emit(extras, used);
        return;
    }
    for x in 0..=spare - used {
        extras[pos] = x;
        distribute(extras, pos + 1, spare, used + x, emit);
    }
    extras[pos] = 0;
}

fn assemble(k: usize, internal: &[(usize, usize)], src: &[usize], snk: &[usize], isolated: usize) -> ProcessiveGraph {
    let n_src = src.iter().sum::<usize>() + isolated;
    let n_snk = snk.iter().sum::<usize>() + isolated;
    // positions: sources [0, n_src), internal [n_src, n_src + k), sinks after
    let internal_pos = |i: usize| n_src + i;
    let sink_pos = |j: usize| n_src + k + j;
    let mut names: Vec<String> = (1..=n_src).map(|i| format!("s{i}")).collect();
    names.extend((1..=k).map(|i| format!("v{i}")));
    names.extend((1..=n_snk).map(|i| format!("t{i}")));

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let (mut next_src, mut next_snk) = (0, 0);
    for i in 0..k {
        for _ in 0..src[i] {
            edges.push((next_src, internal_pos(i)));
            next_src += 1;
        }
        for _ in 0..snk[i] {
            edges.push((internal_pos(i), sink_pos(next_snk)));
            next_snk += 1;
        }
    }
    for _ in 0..isolated {
        edges.push((next_src, sink_pos(next_snk)));
        next_src += 1;
        next_snk += 1;
    }
    edges.extend(internal.iter().map(|&(i, j)| (internal_pos(i), internal_pos(j))));
    edges.sort_unstable();

    let records = edges
        .iter()
        .enumerate()
        .map(|(ix, &(s, t))| EdgeRecord::new(format!("e{}", ix + 1), names[s].clone(), names[t].clone()));
    let g = DirectedMultigraph::build(names.clone(), records).expect("catalog ids are unique");
    validate_processive(g).expect("catalog graphs are processive by construction")
}

/// A random processive graph: `extra_edges` uniformly chosen edges `vi → vj`
/// (`i < j`) over `internal_vertices` internal vertices, then a fresh
/// degree-one source on every internal vertex without incoming edges and a
/// fresh degree-one sink on every internal vertex without outgoing edges.
/// With no internal vertices the result is a single edge.
pub fn random_processive(internal_vertices: usize, extra_edges: usize, seed: u64) -> ProcessiveGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = internal_vertices;
    let mut internal = Vec::new();
    if k >= 2 {
        for _ in 0..extra_edges {
            let i = rng.gen_range(0..k);
            let mut j = rng.gen_range(0..k - 1);
            if j >= i {
                j += 1;
            }
            internal.push((i.min(j), i.max(j)));
        }
    }
    let mut has_in = vec![false; k];
    let mut has_out = vec![false; k];
    for &(i, j) in &internal {
        has_out[i] = true;
        has_in[j] = true;
    }
    let src: Vec<usize> = has_in.iter().map(|&b| usize::from(!b)).collect();
    let snk: Vec<usize> = has_out.iter().map(|&b| usize::from(!b)).collect();
    internal.sort_unstable();
    assemble(k, &internal, &src, &snk, usize::from(k == 0))
}

/// Shared counter enforcing an order budget across parallel workers.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Self {
            limit,
            used: AtomicU64::new(0),
        }
    }

    /// Charges `n` orders; fails once the running total exceeds the limit.
    pub fn charge(&self, n: u64) -> Result<(), OracleError> {
        let total = self.used.fetch_add(n, AtomicOrdering::Relaxed) + n;
        if total > self.limit {
            Err(OracleError::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(AtomicOrdering::Relaxed)
    }
}

/// One failing (graph, edge order) pair from a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepFailure<F> {
    pub graph: usize,
    pub edge_order: Vec<String>,
    pub detail: F,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSummary<F> {
    pub graphs: usize,
    pub orders: u64,
    pub failures: Vec<SweepFailure<F>>,
}

/// Visits every planar edge order of every given graph and collects the
/// cases where `check` returns `Some`. Failures are sorted by graph index
/// then enumeration order.
pub fn sweep_pops<F, C>(
    graphs: &[ProcessiveGraph],
    exec: Execution,
    budget: u64,
    check: C,
) -> Result<SweepSummary<F>, OracleError>
where
    F: Send,
    C: Fn(&PopGraph) -> Option<F> + Sync + Send,
{
    let budget = Budget::new(budget);
    let shared: Vec<Arc<ProcessiveGraph>> = graphs.iter().cloned().map(Arc::new).collect();
    let indexed: Vec<(usize, Arc<ProcessiveGraph>)> = shared.into_iter().enumerate().collect();
    let per_graph = par::map(
        exec,
        &indexed,
        |(gi, g)| -> Result<(u64, Vec<SweepFailure<F>>), OracleError> {
            let poset = Arc::new(edge_poset(g));
            let mut orders = 0;
            let mut failures = Vec::new();
            for seq in IndexExtensions::new(&poset, true) {
                budget.charge(1)?;
                orders += 1;
                let pop = PopGraph::from_planar_indices(Arc::clone(g), Arc::clone(&poset), &seq);
                if let Some(detail) = check(&pop) {
                    failures.push(SweepFailure {
                        graph: *gi,
                        edge_order: pop.edge_order().as_slice().to_vec(),
                        detail,
                    });
                }
            }
            Ok((orders, failures))
        },
    );
    let mut summary = SweepSummary {
        graphs: graphs.len(),
        orders: 0,
        failures: Vec::new(),
    };
    for r in per_graph {
        let (orders, failures) = r?;
        summary.orders += orders;
        summary.failures.extend(failures);
    }
    Ok(summary)
}

/// Checks that every planar edge order of every catalog graph induces a
/// planar vertex order on which both comparators agree.
pub fn theorem_sweep(
    spec: &GraphCatalogSpec,
    exec: Execution,
    budget: u64,
) -> Result<SweepSummary<InducedReport>, OracleError> {
    let graphs = catalog_graphs(spec)?;
    sweep_pops(&graphs, exec, budget, |pop| {
        let report = validate_induced(pop);
        (!report.passed()).then_some(report)
    })
}

/// Planar vertex orders of one graph versus those induced by its planar
/// edge orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConverseReport {
    pub graph: ProcessiveGraph,
    pub vertex_planar_orders: usize,
    pub induced_orders: usize,
    /// Planar vertex orders induced by no planar edge order, in
    /// enumeration order.
    pub witnesses: Vec<Vec<String>>,
}

impl ConverseReport {
    pub fn has_witness(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

/// Compares the induced image against the full set of planar vertex orders
/// for one graph.
pub fn converse_for_graph(g: &ProcessiveGraph, budget: &Budget) -> Result<ConverseReport, OracleError> {
    converse_inner(0, &Arc::new(g.clone()), budget)
}

fn converse_inner(gi: usize, g: &Arc<ProcessiveGraph>, budget: &Budget) -> Result<ConverseReport, OracleError> {
    let vp = vertex_poset(g);
    let mut vertex_orders: Vec<Vec<usize>> = Vec::new();
    for seq in IndexExtensions::new(&vp, true) {
        budget.charge(1)?;
        vertex_orders.push(seq);
    }
    let planar: HashSet<&[usize]> = vertex_orders.iter().map(Vec::as_slice).collect();

    let ep = Arc::new(edge_poset(g));
    let mut image: HashSet<Vec<usize>> = HashSet::new();
    for seq in IndexExtensions::new(&ep, true) {
        budget.charge(1)?;
        let pop = PopGraph::from_planar_indices(Arc::clone(g), Arc::clone(&ep), &seq);
        let induced = induced_vertex_seq(&pop);
        if !planar.contains(induced.as_slice()) {
            return Err(OracleError::InducedNotPlanar {
                graph: gi,
                vertex_order: induced.iter().map(|&v| g.vertex_id(v).to_string()).collect(),
            });
        }
        image.insert(induced);
    }
    let witnesses = vertex_orders
        .iter()
        .filter(|s| !image.contains(*s))
        .map(|s| s.iter().map(|&v| g.vertex_id(v).to_string()).collect())
        .collect();
    Ok(ConverseReport {
        graph: (**g).clone(),
        vertex_planar_orders: vertex_orders.len(),
        induced_orders: image.len(),
        witnesses,
    })
}

/// Runs the converse comparison over every catalog graph, in catalog order.
/// An induced order outside the planar vertex orders is a hard error.
pub fn converse_search(
    spec: &GraphCatalogSpec,
    exec: Execution,
    budget: u64,
) -> Result<Vec<ConverseReport>, OracleError> {
    let graphs = catalog_graphs(spec)?;
    let budget = Budget::new(budget);
    let indexed: Vec<(usize, Arc<ProcessiveGraph>)> = graphs.into_iter().map(Arc::new).enumerate().collect();
    par::map(exec, &indexed, |(gi, g)| converse_inner(*gi, g, &budget))
        .into_iter()
        .collect()
}
