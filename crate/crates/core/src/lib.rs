//! Planar orders on finite posets and on the edge and vertex posets of
//! processive graphs.
//!
//! A processive graph is an acyclic directed multigraph whose sources and
//! sinks all have degree one. A planar order on a poset `(X, →)` is a linear
//! extension `≺` of `→` that also satisfies the betweenness axiom: whenever
//! `x1 ≺ x2 ≺ x3` and `x1 → x3`, either `x1 → x2` or `x2 → x3`.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: multigraphs, processivity validation, edge and vertex posets.
//! * [`poset`]: finite strict posets and linear orders.
//! * [`order`]: axiom checkers and conjugate orders on arbitrary posets.
//! * [`pop`]: planarly ordered processive graphs, anchors, consecutiveness.
//! * [`induce`]: the vertex order induced by an edge planar order.
//! * [`oracle`]: brute-force enumeration, catalogs, sweeps, converse search.
//! * [`embed`]: rotation systems, face traversal, Euler certificate, SVG/DOT.
//! * [`format`]: the line-oriented `.popg` text format and bundled fixture.
//! * [`cli`]: the `popg` command-line front end.
//!
//! ```
//! use popgraph::format::{parse_popg, FIXTURE};
//! use popgraph::graph::validate_processive;
//! use popgraph::{induce_vertex_order, make_pop, validate_induced};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let doc = parse_popg(FIXTURE)?;
//! let graph = validate_processive(doc.graph).expect("processive");
//! let pop = make_pop(graph, doc.order)?;
//! assert!(validate_induced(&pop).passed());
//! assert_eq!(induce_vertex_order(&pop).as_slice()[..3], ["1", "2", "3"]);
//! # Ok(())
//! # }
//! ```

pub mod cli;
pub mod embed;
pub mod format;
pub mod graph;
pub mod induce;
pub mod oracle;
pub mod order;
pub mod par;
pub mod pop;
pub mod poset;

pub use graph::{DirectedMultigraph, EdgeRecord, GraphError, ProcessiveGraph, ProcessiveViolation};
pub use induce::{compare_key, compare_paper, induce_vertex_order, validate_induced, VertexKey};
pub use order::{check_conjugate, check_p1, check_p2, conjugate_relation, OrderError, Relation};
pub use pop::{anchors, check_consecutive, check_interval, make_pop, PopGraph, VertexAnchors};
pub use poset::{FinitePoset, LinearOrder, PosetError};
