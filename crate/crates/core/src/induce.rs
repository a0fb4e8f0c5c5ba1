//! The vertex order induced by a planar edge order.
//!
//! Two comparators are provided. [`compare_paper`] evaluates the four anchor
//! conditions directly: `v1` precedes `v2` iff one of
//!
//! 1. `i⁺(v1) ≺ i⁺(v2)`
//! 2. `i⁺(v1) ≺ o⁻(v2)`
//! 3. `o⁻(v1) ⪯ i⁺(v2)`
//! 4. `o⁻(v1) ≺ o⁻(v2)`
//!
//! holds, where a condition only applies when the anchors it names exist.
//! [`compare_key`] sorts by a [`VertexKey`], which is what
//! [`induce_vertex_order`] uses; the two are checked against each other by
//! [`validate_induced`].

use std::cmp::Ordering;

use thiserror::Error;

use crate::graph::vertex_poset;
use crate::order::{check_p1, check_p2};
use crate::pop::PopGraph;
use crate::poset::LinearOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompareError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("cannot compare vertex `{0}` with itself")]
    IdenticalVertices(String),
}

/// Which end of its anchor edge a vertex sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// In-degree 0: keyed on `o⁻(v)`, the vertex is that edge's source.
    Source = 0,
    /// Keyed on `i⁺(v)`, the vertex is that edge's target.
    Target = 1,
}

/// Sort key of a vertex: rank of its anchor edge, then side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexKey {
    pub anchor_rank: usize,
    pub side: Side,
}

/// Key of vertex index `v`. Every vertex of a processive graph has at least
/// one incident edge, so a key always exists.
pub fn vertex_key(pop: &PopGraph, v: usize) -> VertexKey {
    let a = pop.anchor_ix(v);
    match (a.i_plus, a.o_minus) {
        (Some(e), _) => VertexKey {
            anchor_rank: pop.edge_rank(e),
            side: Side::Target,
        },
        (None, Some(e)) => VertexKey {
            anchor_rank: pop.edge_rank(e),
            side: Side::Source,
        },
        (None, None) => unreachable!("processive graphs have no isolated vertices"),
    }
}

/// The four-condition test, by vertex index. Returns `true` when `v1` comes
/// before `v2`.
pub fn precedes_by_conditions(pop: &PopGraph, v1: usize, v2: usize) -> bool {
    let a1 = pop.anchor_ix(v1);
    let a2 = pop.anchor_ix(v2);
    let r = |e: Option<usize>| e.map(|e| pop.edge_rank(e));
    let (i1, o1, i2, o2) = (r(a1.i_plus), r(a1.o_minus), r(a2.i_plus), r(a2.o_minus));
    let strictly = |x: Option<usize>, y: Option<usize>| matches!((x, y), (Some(x), Some(y)) if x < y);
    strictly(i1, i2) || strictly(i1, o2) || matches!((o1, i2), (Some(x), Some(y)) if x <= y) || strictly(o1, o2)
}

fn resolve(pop: &PopGraph, v1: &str, v2: &str) -> Result<(usize, usize), CompareError> {
    let ix = |v: &str| {
        pop.graph()
            .vertex_ix(v)
            .ok_or_else(|| CompareError::UnknownVertex(v.to_string()))
    };
    let (a, b) = (ix(v1)?, ix(v2)?);
    if a == b {
        return Err(CompareError::IdenticalVertices(v1.to_string()));
    }
    Ok((a, b))
}

/// Compares two distinct vertices by the four anchor conditions.
/// `Less` means `v1` comes first.
pub fn compare_paper(pop: &PopGraph, v1: &str, v2: &str) -> Result<Ordering, CompareError> {
    let (a, b) = resolve(pop, v1, v2)?;
    Ok(if precedes_by_conditions(pop, a, b) {
        Ordering::Less
    } else {
        Ordering::Greater
    })
}

/// Compares two distinct vertices by their [`VertexKey`].
pub fn compare_key(pop: &PopGraph, v1: &str, v2: &str) -> Result<Ordering, CompareError> {
    let (a, b) = resolve(pop, v1, v2)?;
    Ok(vertex_key(pop, a).cmp(&vertex_key(pop, b)))
}

/// Vertex indices sorted by key.
pub fn induced_vertex_seq(pop: &PopGraph) -> Vec<usize> {
    let mut seq: Vec<usize> = (0..pop.graph().vertex_count()).collect();
    seq.sort_by_cached_key(|&v| vertex_key(pop, v));
    seq
}

pub fn induce_vertex_order(pop: &PopGraph) -> LinearOrder {
    LinearOrder::from_indices(pop.graph().vertex_ids(), &induced_vertex_seq(pop))
}

/// Outcome of checking the induced vertex order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InducedReport {
    pub order: Vec<String>,
    pub p1: Vec<(String, String)>,
    pub p2: Vec<(String, String, String)>,
    /// Ordered vertex pairs on which the two comparators disagree.
    pub disagreements: Vec<(String, String)>,
}

impl InducedReport {
    pub fn passed(&self) -> bool {
        self.p1.is_empty() && self.p2.is_empty() && self.disagreements.is_empty()
    }
}

/// Runs (P1) and (P2) for the induced order against the vertex poset and
/// compares the two comparators on every ordered pair of distinct vertices.
pub fn validate_induced(pop: &PopGraph) -> InducedReport {
    let g = pop.graph();
    let vp = vertex_poset(g);
    let order = induce_vertex_order(pop);
    let p1 = check_p1(&vp, &order).expect("induced order covers the vertex set");
    let p2 = check_p2(&vp, &order).expect("induced order covers the vertex set");

    let n = g.vertex_count();
    let keys: Vec<VertexKey> = (0..n).map(|v| vertex_key(pop, v)).collect();
    let mut disagreements = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && precedes_by_conditions(pop, a, b) != (keys[a] < keys[b]) {
                disagreements.push((g.vertex_id(a).to_string(), g.vertex_id(b).to_string()));
            }
        }
    }
    InducedReport {
        order: order.as_slice().to_vec(),
        p1,
        p2,
        disagreements,
    }
}
