//! Combinatorial embeddings of POP-graphs and static drawings.
//!
//! The rotation at each vertex lists its incoming edges in ascending edge
//! order followed by its outgoing edges in descending edge order, read
//! clockwise. Face walks follow the clockwise successor at each vertex, and
//! each connected component is certified planar by `v - e + f = 2`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{component_members, ProcessiveGraph};
use crate::induce::{induced_vertex_seq, vertex_key};
use crate::pop::PopGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    AtSource,
    AtTarget,
}

/// One end of an edge, as seen from the vertex it is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: End,
}

impl EdgeEnd {
    pub fn at_source(edge: usize) -> Self {
        Self {
            edge,
            end: End::AtSource,
        }
    }

    pub fn at_target(edge: usize) -> Self {
        Self {
            edge,
            end: End::AtTarget,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("rotation covers {got} vertices, graph has {expected}")]
    VertexCount { expected: usize, got: usize },
    #[error("edge end {edge}/{end:?} is missing from the rotation at vertex {vertex}")]
    MissingEnd { vertex: usize, edge: usize, end: End },
    #[error("edge end {edge}/{end:?} is misplaced or repeated at vertex {vertex}")]
    StrayEnd { vertex: usize, edge: usize, end: End },
}

/// Clockwise cyclic sequence of edge ends around each vertex, indexed by
/// vertex index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    pub rotations: Vec<Vec<EdgeEnd>>,
}

impl RotationSystem {
    pub fn new(rotations: Vec<Vec<EdgeEnd>>) -> Self {
        Self { rotations }
    }

    /// Checks that every vertex lists exactly its own edge ends, once each.
    pub fn validate(&self, g: &ProcessiveGraph) -> Result<(), EmbedError> {
        if self.rotations.len() != g.vertex_count() {
            return Err(EmbedError::VertexCount {
                expected: g.vertex_count(),
                got: self.rotations.len(),
            });
        }
        for (v, rot) in self.rotations.iter().enumerate() {
            let mut expected: Vec<EdgeEnd> = g
                .in_edges(v)
                .iter()
                .map(|&e| EdgeEnd::at_target(e))
                .chain(g.out_edges(v).iter().map(|&e| EdgeEnd::at_source(e)))
                .collect();
            expected.sort();
            let mut got = rot.clone();
            got.sort();
            if got == expected {
                continue;
            }
            if let Some(x) = expected.iter().find(|x| !got.contains(x)) {
                return Err(EmbedError::MissingEnd {
                    vertex: v,
                    edge: x.edge,
                    end: x.end,
                });
            }
            let stray = got
                .iter()
                .enumerate()
                .find(|&(i, x)| !expected.contains(x) || (i > 0 && got[i - 1] == *x))
                .map(|(_, x)| *x)
                .expect("mismatched rotation has a stray end");
            return Err(EmbedError::StrayEnd {
                vertex: v,
                edge: stray.edge,
                end: stray.end,
            });
        }
        Ok(())
    }

    /// Rotation as edge ids with `+` for an outgoing end and `-` for an
    /// incoming one, e.g. `["-2", "-3", "+9"]`.
    pub fn describe(&self, g: &ProcessiveGraph, v: usize) -> Vec<String> {
        self.rotations[v]
            .iter()
            .map(|x| {
                let sign = match x.end {
                    End::AtSource => '+',
                    End::AtTarget => '-',
                };
                format!("{sign}{}", g.edge_id(x.edge))
            })
            .collect()
    }
}

/// Incoming edges ascending by edge rank, then outgoing edges descending.
pub fn rotation_system(pop: &PopGraph) -> RotationSystem {
    let g = pop.graph();
    let rotations = (0..g.vertex_count())
        .map(|v| {
            let mut ins = g.in_edges(v).to_vec();
            ins.sort_by_key(|&e| pop.edge_rank(e));
            let mut outs = g.out_edges(v).to_vec();
            outs.sort_by_key(|&e| std::cmp::Reverse(pop.edge_rank(e)));
            ins.into_iter()
                .map(EdgeEnd::at_target)
                .chain(outs.into_iter().map(EdgeEnd::at_source))
                .collect()
        })
        .collect();
    RotationSystem { rotations }
}

/// One step of a face walk: stand at `vertex` and leave along `leave`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceStep {
    pub vertex: usize,
    pub leave: EdgeEnd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub steps: Vec<FaceStep>,
    pub component: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    pub faces_per_component: Vec<usize>,
}

impl FaceSet {
    pub fn total_steps(&self) -> usize {
        self.faces.iter().map(|f| f.steps.len()).sum()
    }
}

/// Walks every face: after arriving at a vertex along some edge, leave along
/// the clockwise successor of that edge's end in the vertex rotation. Each
/// of the `2E` edge sides is used by exactly one step.
pub fn face_traversal(g: &ProcessiveGraph, rs: &RotationSystem) -> Result<FaceSet, EmbedError> {
    rs.validate(g)?;
    let m = g.edge_count();
    // position of each edge end within its vertex rotation
    let mut slot = vec![0usize; 2 * m];
    let end_ix = |x: EdgeEnd| 2 * x.edge + usize::from(x.end == End::AtTarget);
    for rot in &rs.rotations {
        for (i, &x) in rot.iter().enumerate() {
            slot[end_ix(x)] = i;
        }
    }
    let (label, count) = g.components();

    let mut used = vec![false; 2 * m];
    let mut faces = Vec::new();
    let mut faces_per_component = vec![0; count];
    for e in 0..m {
        for start in [EdgeEnd::at_source(e), EdgeEnd::at_target(e)] {
            if used[end_ix(start)] {
                continue;
            }
            let mut steps = Vec::new();
            let mut leave = start;
            while !used[end_ix(leave)] {
                used[end_ix(leave)] = true;
                let (from, to, arrive) = match leave.end {
                    End::AtSource => (
                        g.source(leave.edge),
                        g.target(leave.edge),
                        EdgeEnd::at_target(leave.edge),
                    ),
                    End::AtTarget => (
                        g.target(leave.edge),
                        g.source(leave.edge),
                        EdgeEnd::at_source(leave.edge),
                    ),
                };
                steps.push(FaceStep { vertex: from, leave });
                let rot = &rs.rotations[to];
                leave = rot[(slot[end_ix(arrive)] + 1) % rot.len()];
            }
            let component = label[steps[0].vertex];
            faces_per_component[component] += 1;
            faces.push(Face { steps, component });
        }
    }
    Ok(FaceSet {
        faces,
        faces_per_component,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentEuler {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl ComponentEuler {
    pub fn characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }

    pub fn passed(&self) -> bool {
        self.characteristic() == 2
    }
}

/// Per connected component (labelled by first vertex appearance), the
/// counts entering Euler's formula.
pub fn euler_check(g: &ProcessiveGraph, rs: &RotationSystem) -> Result<Vec<ComponentEuler>, EmbedError> {
    let faces = face_traversal(g, rs)?;
    let (label, _) = g.components();
    Ok(component_members(g)
        .iter()
        .enumerate()
        .map(|(c, members)| ComponentEuler {
            vertices: members.len(),
            edges: (0..g.edge_count()).filter(|&e| label[g.source(e)] == c).count(),
            faces: faces.faces_per_component[c],
        })
        .collect())
}

/// Layer of each vertex: longest-path depth from the sources, with every
/// sink pushed to the deepest layer.
pub fn layers(g: &ProcessiveGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut depth = vec![0usize; n];
    let mut indeg: Vec<usize> = (0..n).map(|v| g.in_degree(v)).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &e in g.out_edges(v) {
            let w = g.target(e);
            depth[w] = depth[w].max(depth[v] + 1);
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    let bottom = depth.iter().copied().max().unwrap_or(0);
    for (v, d) in depth.iter_mut().enumerate() {
        if g.is_sink(v) {
            *d = bottom;
        }
    }
    depth
}

const MARGIN: f64 = 40.0;
const DX: f64 = 40.0;
const DY: f64 = 60.0;
const PARALLEL_OFFSET: f64 = 14.0;

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Layered SVG drawing: sources on the top boundary, sinks on the bottom.
/// The x position is the rank of the vertex's anchor edge, which orders
/// vertices exactly as the induced vertex order does except that a source
/// and target sharing an anchor edge are stacked vertically. Parallel edges
/// bend apart at their midpoint. One `circle` per vertex and one `path` per
/// edge.
pub fn emit_svg(pop: &PopGraph) -> String {
    let g = pop.graph();
    let layer = layers(g);
    let bottom = layer.iter().copied().max().unwrap_or(0);
    let xpos: Vec<usize> = (0..g.vertex_count())
        .map(|v| vertex_key(pop, v).anchor_rank - 1)
        .collect();
    let x = |v: usize| MARGIN + DX * xpos[v] as f64;
    let y = |v: usize| MARGIN + DY * layer[v] as f64;
    let width = 2.0 * MARGIN + DX * g.edge_count().saturating_sub(1) as f64;
    let height = 2.0 * MARGIN + DY * bottom as f64;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"  <rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="gray" stroke-dasharray="4 4"/>"#,
        MARGIN / 2.0,
        MARGIN,
        width - MARGIN,
        DY * bottom as f64
    );

    let mut parallel: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in pop.edges_by_rank() {
        parallel.entry((g.source(e), g.target(e))).or_default().push(e);
    }
    for ((sv, tv), group) in &parallel {
        let (x1, y1, x2, y2) = (x(*sv), y(*sv), x(*tv), y(*tv));
        let k = group.len();
        for (i, &e) in group.iter().enumerate() {
            let id = xml_escape(g.edge_id(e));
            let d = if k == 1 {
                format!("M {x1:.1} {y1:.1} L {x2:.1} {y2:.1}")
            } else {
                let shift = (i as f64 - (k as f64 - 1.0) / 2.0) * PARALLEL_OFFSET;
                let (mx, my) = ((x1 + x2) / 2.0 + shift, (y1 + y2) / 2.0);
                format!("M {x1:.1} {y1:.1} L {mx:.1} {my:.1} L {x2:.1} {y2:.1}")
            };
            let _ = writeln!(
                s,
                r#"  <path id="edge-{id}" d="{d}" fill="none" stroke="black" data-rank="{}"/>"#,
                pop.edge_rank(e)
            );
        }
    }
    for v in 0..g.vertex_count() {
        let id = xml_escape(g.vertex_id(v));
        let _ = writeln!(
            s,
            r#"  <circle id="vertex-{id}" cx="{:.1}" cy="{:.1}" r="4" fill="black"/>"#,
            x(v),
            y(v)
        );
        let _ = writeln!(
            s,
            r#"  <text x="{:.1}" y="{:.1}" font-size="11" font-family="sans-serif">{id}</text>"#,
            x(v) + 6.0,
            y(v) - 6.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT description with `vorder` (induced vertex rank) on nodes and
/// `eorder` (edge rank) on edges. Edges are listed by ascending rank.
pub fn emit_dot(pop: &PopGraph) -> String {
    let g = pop.graph();
    let mut vrank = vec![0usize; g.vertex_count()];
    for (r, &v) in induced_vertex_seq(pop).iter().enumerate() {
        vrank[v] = r + 1;
    }
    let mut s = String::from("digraph popg {\n  rankdir=TB;\n  ordering=out;\n");
    for (v, rank) in vrank.iter().enumerate() {
        let id = dot_quote(g.vertex_id(v));
        let _ = writeln!(s, "  {id} [label={id}, vorder={rank}];");
    }
    for e in pop.edges_by_rank() {
        let _ = writeln!(
            s,
            "  {} -> {} [id={}, label={}, eorder={}];",
            dot_quote(g.vertex_id(g.source(e))),
            dot_quote(g.vertex_id(g.target(e))),
            dot_quote(g.edge_id(e)),
            dot_quote(g.edge_id(e)),
            pop.edge_rank(e)
        );
    }
    s.push_str("}\n");
    s
}
