//! Planarly ordered processive graphs and the per-vertex anchor machinery.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{edge_poset, edge_set, ProcessiveGraph};
use crate::order::{check_p1, check_p2, OrderError};
use crate::poset::{FinitePoset, LinearOrder};

/// (P1) and (P2) violations of an edge order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PopViolations {
    pub p1: Vec<(String, String)>,
    pub p2: Vec<(String, String, String)>,
}

impl PopViolations {
    pub fn is_empty(&self) -> bool {
        self.p1.is_empty() && self.p2.is_empty()
    }
}

impl fmt::Display for PopViolations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.p1 {
            writeln!(f, "P1 violation: {a} -> {b} but {b} precedes {a}")?;
        }
        for (a, b, c) in &self.p2 {
            writeln!(
                f,
                "P2 violation: {a} < {b} < {c} with {a} -> {c}, {a} -/-> {b}, {b} -/-> {c}"
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PopError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("edge order is not planar:\n{0}")]
    NotPlanar(PopViolations),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

/// A processive graph together with a planar order on its edge poset.
///
/// The graph and edge poset are shared behind `Arc` so that sweeps over
/// many orders of one graph do not copy them.
#[derive(Debug, Clone)]
pub struct PopGraph {
    graph: Arc<ProcessiveGraph>,
    edge_poset: Arc<FinitePoset>,
    edge_order: LinearOrder,
    // 1-based rank per edge index
    edge_rank: Vec<usize>,
}

impl PartialEq for PopGraph {
    fn eq(&self, other: &Self) -> bool {
        self.graph.vertex_ids() == other.graph.vertex_ids()
            && edge_set(&self.graph) == edge_set(&other.graph)
            && self.edge_order == other.edge_order
    }
}

impl Eq for PopGraph {}

/// Validates `ord` as a planar order of `g`'s edge poset.
pub fn make_pop(g: ProcessiveGraph, ord: LinearOrder) -> Result<PopGraph, PopError> {
    let poset = edge_poset(&g);
    PopGraph::from_shared(Arc::new(g), Arc::new(poset), ord)
}

impl PopGraph {
    /// As [`make_pop`], reusing an already computed edge poset.
    pub fn from_shared(
        graph: Arc<ProcessiveGraph>,
        edge_poset: Arc<FinitePoset>,
        ord: LinearOrder,
    ) -> Result<Self, PopError> {
        let violations = PopViolations {
            p1: check_p1(&edge_poset, &ord)?,
            p2: check_p2(&edge_poset, &ord)?,
        };
        if !violations.is_empty() {
            return Err(PopError::NotPlanar(violations));
        }
        Ok(Self::new_unchecked(graph, edge_poset, ord))
    }

    /// Builds from an edge index sequence already known to be planar.
    pub(crate) fn from_planar_indices(
        graph: Arc<ProcessiveGraph>,
        edge_poset: Arc<FinitePoset>,
        seq: &[usize],
    ) -> Self {
        let ord = LinearOrder::from_indices(edge_poset.elements(), seq);
        Self::new_unchecked(graph, edge_poset, ord)
    }

    fn new_unchecked(graph: Arc<ProcessiveGraph>, edge_poset: Arc<FinitePoset>, ord: LinearOrder) -> Self {
        let edge_rank = (0..graph.edge_count())
            .map(|e| ord.rank(graph.edge_id(e)).expect("order covers every edge"))
            .collect();
        Self {
            graph,
            edge_poset,
            edge_order: ord,
            edge_rank,
        }
    }

    pub fn graph(&self) -> &ProcessiveGraph {
        &self.graph
    }

    pub fn shared_graph(&self) -> &Arc<ProcessiveGraph> {
        &self.graph
    }

    pub fn edge_poset(&self) -> &FinitePoset {
        &self.edge_poset
    }

    pub fn edge_order(&self) -> &LinearOrder {
        &self.edge_order
    }

    /// 1-based rank of edge index `e`.
    #[inline]
    pub fn edge_rank(&self, e: usize) -> usize {
        self.edge_rank[e]
    }

    /// Edge indices in ascending order.
    pub fn edges_by_rank(&self) -> Vec<usize> {
        let mut seq = vec![0; self.edge_rank.len()];
        for (e, &r) in self.edge_rank.iter().enumerate() {
            seq[r - 1] = e;
        }
        seq
    }

    pub fn vertex_ix(&self, id: &str) -> Result<usize, PopError> {
        self.graph
            .vertex_ix(id)
            .ok_or_else(|| PopError::UnknownVertex(id.to_string()))
    }

    fn min_by_rank(&self, edges: &[usize]) -> Option<usize> {
        edges.iter().copied().min_by_key(|&e| self.edge_rank[e])
    }

    fn max_by_rank(&self, edges: &[usize]) -> Option<usize> {
        edges.iter().copied().max_by_key(|&e| self.edge_rank[e])
    }

    /// Anchors of vertex index `v` as edge indices.
    pub fn anchor_ix(&self, v: usize) -> AnchorIx {
        let (ins, outs) = (self.graph.in_edges(v), self.graph.out_edges(v));
        AnchorIx {
            i_minus: self.min_by_rank(ins),
            i_plus: self.max_by_rank(ins),
            o_minus: self.min_by_rank(outs),
            o_plus: self.max_by_rank(outs),
        }
    }
}

/// Extreme incoming/outgoing edges of one vertex, as edge indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnchorIx {
    pub i_minus: Option<usize>,
    pub i_plus: Option<usize>,
    pub o_minus: Option<usize>,
    pub o_plus: Option<usize>,
}

/// Extreme incoming/outgoing edges of one vertex under the edge order,
/// absent when the vertex has no incoming (resp. outgoing) edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexAnchors {
    pub i_minus: Option<String>,
    pub i_plus: Option<String>,
    pub o_minus: Option<String>,
    pub o_plus: Option<String>,
}

pub fn anchors(pop: &PopGraph, v: &str) -> Result<VertexAnchors, PopError> {
    let a = pop.anchor_ix(pop.vertex_ix(v)?);
    let name = |e: Option<usize>| e.map(|e| pop.graph.edge_id(e).to_string());
    Ok(VertexAnchors {
        i_minus: name(a.i_minus),
        i_plus: name(a.i_plus),
        o_minus: name(a.o_minus),
        o_plus: name(a.o_plus),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Exempt,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "FAIL",
            Self::Exempt => "exempt",
        })
    }
}

/// Result of the consecutiveness check `rank(o⁻(v)) = rank(i⁺(v)) + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsecutiveCheck {
    pub vertex: String,
    pub i_plus_rank: Option<usize>,
    pub o_minus_rank: Option<usize>,
    pub outcome: Outcome,
}

/// For every vertex of degree other than one, the last incoming edge and
/// the first outgoing edge must be adjacent in the edge order.
pub fn check_consecutive(pop: &PopGraph) -> Vec<ConsecutiveCheck> {
    let g = pop.graph();
    (0..g.vertex_count())
        .map(|v| {
            let a = pop.anchor_ix(v);
            let i_plus_rank = a.i_plus.map(|e| pop.edge_rank(e));
            let o_minus_rank = a.o_minus.map(|e| pop.edge_rank(e));
            let outcome = if g.degree(v) == 1 {
                Outcome::Exempt
            } else {
                match (i_plus_rank, o_minus_rank) {
                    (Some(i), Some(o)) if o == i + 1 => Outcome::Pass,
                    _ => Outcome::Fail,
                }
            };
            ConsecutiveCheck {
                vertex: g.vertex_id(v).to_string(),
                i_plus_rank,
                o_minus_rank,
                outcome,
            }
        })
        .collect()
}

/// Rank hulls of the incoming and outgoing edges of one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalCheck {
    pub vertex: String,
    pub in_hull: Option<(usize, usize)>,
    pub out_hull: Option<(usize, usize)>,
    pub outcome: Outcome,
}

/// For every vertex with both incoming and outgoing edges, the rank hull of
/// the incoming edges must end immediately before the rank hull of the
/// outgoing edges begins.
pub fn check_interval(pop: &PopGraph) -> Vec<IntervalCheck> {
    let g = pop.graph();
    let hull = |edges: &[usize]| {
        let lo = edges.iter().map(|&e| pop.edge_rank(e)).min()?;
        let hi = edges.iter().map(|&e| pop.edge_rank(e)).max()?;
        Some((lo, hi))
    };
    (0..g.vertex_count())
        .map(|v| {
            let in_hull = hull(g.in_edges(v));
            let out_hull = hull(g.out_edges(v));
            let outcome = match (in_hull, out_hull) {
                (Some((_, in_hi)), Some((out_lo, _))) => {
                    if in_hi < out_lo && in_hi + 1 == out_lo {
                        Outcome::Pass
                    } else {
                        Outcome::Fail
                    }
                }
                _ => Outcome::Exempt,
            };
            IntervalCheck {
                vertex: g.vertex_id(v).to_string(),
                in_hull,
                out_hull,
                outcome,
            }
        })
        .collect()
}
