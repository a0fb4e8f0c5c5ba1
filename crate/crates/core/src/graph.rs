//! Directed multigraphs, processivity, and reachability posets.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Deref;

use thiserror::Error;

use crate::poset::FinitePoset;

/// An edge as supplied by the caller: identifier plus endpoint identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeRecord {
    pub id: String,
    pub source: String,
    pub target: String,
}

impl EdgeRecord {
    pub fn new(id: impl Into<String>, source: impl Into<String>, target: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            source: source.into(),
            target: target.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references undeclared vertex `{vertex}`")]
    UndeclaredEndpoint { edge: String, vertex: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Edge {
    id: String,
    source: usize,
    target: usize,
}

/// A directed multigraph with identity-addressed vertices and edges.
///
/// Vertices and edges are stored in declaration order and are addressed
/// internally by their position (`usize` index). Parallel edges are allowed.
#[derive(Debug, Clone)]
pub struct DirectedMultigraph {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, usize>,
    in_edges: Vec<Vec<usize>>,
    out_edges: Vec<Vec<usize>>,
}

impl PartialEq for DirectedMultigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for DirectedMultigraph {}

impl DirectedMultigraph {
    /// Builds a multigraph, preserving the listing order of both vertices and
    /// edges.
    pub fn build<V, S>(vertices: V, edges: impl IntoIterator<Item = EdgeRecord>) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vs = Vec::new();
        let mut vertex_index = HashMap::new();
        for v in vertices {
            let v = v.into();
            if vertex_index.insert(v.clone(), vs.len()).is_some() {
                return Err(GraphError::DuplicateVertex(v));
            }
            vs.push(v);
        }

        let mut es = Vec::new();
        let mut edge_index = HashMap::new();
        let mut in_edges = vec![Vec::new(); vs.len()];
        let mut out_edges = vec![Vec::new(); vs.len()];
        for rec in edges {
            let lookup = |name: &str| {
                vertex_index
                    .get(name)
                    .copied()
                    .ok_or_else(|| GraphError::UndeclaredEndpoint {
                        edge: rec.id.clone(),
                        vertex: name.to_string(),
                    })
            };
            let source = lookup(&rec.source)?;
            let target = lookup(&rec.target)?;
            if edge_index.contains_key(&rec.id) {
                return Err(GraphError::DuplicateEdge(rec.id));
            }
            let ix = es.len();
            edge_index.insert(rec.id.clone(), ix);
            out_edges[source].push(ix);
            in_edges[target].push(ix);
            es.push(Edge {
                id: rec.id,
                source,
                target,
            });
        }

        Ok(Self {
            vertices: vs,
            vertex_index,
            edges: es,
            edge_index,
            in_edges,
            out_edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e].id
    }

    pub fn vertex_ix(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_ix(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn source(&self, e: usize) -> usize {
        self.edges[e].source
    }

    pub fn target(&self, e: usize) -> usize {
        self.edges[e].target
    }

    /// Incoming edge indices of `v`, in listing order.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    /// Outgoing edge indices of `v`, in listing order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_edges[v].len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_edges[v].len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.in_degree(v) + self.out_degree(v)
    }

    /// Edges as caller-facing records, in listing order.
    pub fn edge_records(&self) -> impl Iterator<Item = EdgeRecord> + '_ {
        self.edges.iter().map(|e| EdgeRecord {
            id: e.id.clone(),
            source: self.vertices[e.source].clone(),
            target: self.vertices[e.target].clone(),
        })
    }

    /// Undirected connected components as a per-vertex component label plus
    /// the component count. Labels follow first appearance in vertex order.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                let nbrs = self.out_edges[v]
                    .iter()
                    .map(|&e| self.edges[e].target)
                    .chain(self.in_edges[v].iter().map(|&e| self.edges[e].source));
                for w in nbrs {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Finds one directed cycle, returned as a sequence of edge indices.
    fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.vertex_count();
        let mut mark = vec![Mark::New; n];
        // (vertex, next out-edge cursor); `path` holds the edges on the stack.
        let mut stack: Vec<(usize, usize)> = Vec::new();
        let mut path: Vec<usize> = Vec::new();
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            mark[root] = Mark::Active;
            stack.push((root, 0));
            while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
                if let Some(&e) = self.out_edges[v].get(*cursor) {
                    *cursor += 1;
                    let w = self.edges[e].target;
                    match mark[w] {
                        Mark::New => {
                            mark[w] = Mark::Active;
                            path.push(e);
                            stack.push((w, 0));
                        }
                        Mark::Active => {
                            // The cycle starts at the first path edge leaving w.
                            let start = path
                                .iter()
                                .position(|&pe| self.edges[pe].source == w)
                                .unwrap_or(path.len());
                            let mut cycle = path[start..].to_vec();
                            cycle.push(e);
                            return Some(cycle);
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[v] = Mark::Done;
                    stack.pop();
                    path.pop();
                }
            }
        }
        None
    }
}

/// One reason a multigraph fails to be processive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProcessiveViolation {
    /// A directed cycle, as a sequence of edge ids.
    Cycle(Vec<String>),
    /// A vertex with in-degree 0 whose out-degree is not 1.
    Source {
        vertex: String,
        out_degree: usize,
    },
    /// A vertex with out-degree 0 whose in-degree is not 1.
    Sink {
        vertex: String,
        in_degree: usize,
    },
    Isolated(String),
}

impl fmt::Display for ProcessiveViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cycle(edges) => write!(f, "cycle through edges [{}]", edges.join(", ")),
            Self::Source { vertex, out_degree } => {
                write!(f, "source `{vertex}` has out-degree {out_degree}, expected 1")
            }
            Self::Sink { vertex, in_degree } => {
                write!(f, "sink `{vertex}` has in-degree {in_degree}, expected 1")
            }
            Self::Isolated(v) => write!(f, "vertex `{v}` is isolated"),
        }
    }
}

/// A validated processive graph: acyclic, with every source and sink of
/// degree one and no isolated vertex.
///
/// The vertex reachability closure is computed once at validation time.
#[derive(Debug, Clone)]
pub struct ProcessiveGraph {
    graph: DirectedMultigraph,
    // reach[u * n + v]: a directed path of length >= 1 runs from u to v.
    reach: Vec<bool>,
}

impl PartialEq for ProcessiveGraph {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
    }
}

impl Eq for ProcessiveGraph {}

impl Deref for ProcessiveGraph {
    type Target = DirectedMultigraph;

    fn deref(&self) -> &DirectedMultigraph {
        &self.graph
    }
}

/// Checks processivity, reporting every degree violation and one cycle
/// witness when the graph is cyclic.
pub fn validate_processive(g: DirectedMultigraph) -> Result<ProcessiveGraph, Vec<ProcessiveViolation>> {
    let mut violations = Vec::new();
    if let Some(cycle) = g.find_cycle() {
        violations.push(ProcessiveViolation::Cycle(
            cycle.into_iter().map(|e| g.edge_id(e).to_string()).collect(),
        ));
    }
    for v in 0..g.vertex_count() {
        let (din, dout) = (g.in_degree(v), g.out_degree(v));
        let id = g.vertex_id(v).to_string();
        match (din, dout) {
            (0, 0) => violations.push(ProcessiveViolation::Isolated(id)),
            (0, d) if d != 1 => violations.push(ProcessiveViolation::Source {
                vertex: id,
                out_degree: d,
            }),
            (d, 0) if d != 1 => violations.push(ProcessiveViolation::Sink {
                vertex: id,
                in_degree: d,
            }),
            _ => {}
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    let reach = transitive_closure(&g);
    Ok(ProcessiveGraph { graph: g, reach })
}

/// Reachability over an acyclic graph, filled in reverse topological order.
fn transitive_closure(g: &DirectedMultigraph) -> Vec<bool> {
    let n = g.vertex_count();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.in_degree(v)).collect();
    let mut topo: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut head = 0;
    while head < topo.len() {
        let v = topo[head];
        head += 1;
        for &e in g.out_edges(v) {
            let w = g.target(e);
            indeg[w] -= 1;
            if indeg[w] == 0 {
                topo.push(w);
            }
        }
    }
    debug_assert_eq!(topo.len(), n, "closure requires an acyclic graph");

    let mut reach = vec![false; n * n];
    for &v in topo.iter().rev() {
        for &e in g.out_edges(v) {
            let w = g.target(e);
            reach[v * n + w] = true;
            for x in 0..n {
                if reach[w * n + x] {
                    reach[v * n + x] = true;
                }
            }
        }
    }
    reach
}

impl ProcessiveGraph {
    pub fn graph(&self) -> &DirectedMultigraph {
        &self.graph
    }

    pub fn into_graph(self) -> DirectedMultigraph {
        self.graph
    }

    /// `true` iff a directed path of length at least one runs from `u` to `v`.
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.reach[u * self.graph.vertex_count() + v]
    }

    /// `true` iff a directed path starts with edge `e1` and ends with edge
    /// `e2`, for `e1 != e2`.
    pub fn edge_reaches(&self, e1: usize, e2: usize) -> bool {
        if e1 == e2 {
            return false;
        }
        let (t, s) = (self.graph.target(e1), self.graph.source(e2));
        t == s || self.reaches(t, s)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.graph.in_degree(v) == 0
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.graph.out_degree(v) == 0
    }
}

/// The edge poset: `e1 → e2` iff some directed path begins with `e1` and
/// ends with `e2`. Element `i` of the result is edge `i` of the graph.
pub fn edge_poset(g: &ProcessiveGraph) -> FinitePoset {
    let m = g.edge_count();
    let mut lt = vec![false; m * m];
    for e1 in 0..m {
        for e2 in 0..m {
            lt[e1 * m + e2] = g.edge_reaches(e1, e2);
        }
    }
    let ids = (0..m).map(|e| g.edge_id(e).to_string()).collect();
    FinitePoset::from_matrix_unchecked(ids, lt)
}

/// The vertex poset: `v1 → v2` iff a directed path of length at least one
/// runs from `v1` to `v2`. Element `i` of the result is vertex `i`.
pub fn vertex_poset(g: &ProcessiveGraph) -> FinitePoset {
    FinitePoset::from_matrix_unchecked(g.vertex_ids().to_vec(), g.reach.clone())
}

/// Vertex indices grouped by undirected component; used by sweeps that need
/// per-component bookkeeping.
pub fn component_members(g: &DirectedMultigraph) -> Vec<Vec<usize>> {
    let (label, count) = g.components();
    let mut out = vec![Vec::new(); count];
    for (v, &c) in label.iter().enumerate() {
        out[c].push(v);
    }
    out
}

/// Set of edge ids, used to compare multigraphs independent of listing order.
pub(crate) fn edge_set(g: &DirectedMultigraph) -> HashSet<EdgeRecord> {
    g.edge_records().collect()
}
