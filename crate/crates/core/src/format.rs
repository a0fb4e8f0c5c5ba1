//! The `.popg` text format.
//!
//! ```text
//! popg v1
//! # comment
//! v <vertex-id>
//! e <edge-id> <source-id> <target-id>
//! order <edge-id> <edge-id> ...
//! ```
//!
//! UTF-8, one declaration per line, `#` starts a comment. Ids are
//! whitespace-free tokens. Edges are listed in ascending edge order unless an
//! `order` line gives the order explicitly.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{DirectedMultigraph, EdgeRecord, GraphError};
use crate::pop::PopGraph;
use crate::poset::LinearOrder;

pub const HEADER: &str = "popg v1";

/// The bundled example: 20 vertices, 19 edges in three components.
pub const FIXTURE: &str = include_str!("../fixtures/three_components.popg");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `{HEADER}` header")]
    MissingHeader,
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("`{directive}` expects {expected} argument(s), found {found}")]
    Arity {
        directive: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("undeclared vertex `{0}`")]
    UnknownVertex(String),
    #[error("undeclared edge `{0}`")]
    UnknownEdge(String),
    #[error("edge `{0}` appears twice in the order")]
    RepeatedInOrder(String),
    #[error("order omits edge `{0}`")]
    IncompleteOrder(String),
    #[error("second `order` line")]
    DuplicateOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// A parsed document: the raw (unvalidated) graph and its edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopgDocument {
    pub graph: DirectedMultigraph,
    pub order: LinearOrder,
}

pub fn parse_popg(text: &str) -> Result<PopgDocument, ParseError> {
    let err = |line, kind| ParseError { line, kind };
    let mut seen_header = false;
    let mut vertices: Vec<String> = Vec::new();
    let mut vertex_set: HashSet<String> = HashSet::new();
    let mut edges: Vec<EdgeRecord> = Vec::new();
    let mut edge_set: HashSet<String> = HashSet::new();
    let mut order: Option<(usize, Vec<String>)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if !seen_header {
            if tokens != ["popg", "v1"] {
                return Err(err(line_no, ParseErrorKind::MissingHeader));
            }
            seen_header = true;
            continue;
        }
        let args = &tokens[1..];
        let arity = |directive, expected| {
            if args.len() == expected {
                Ok(())
            } else {
                Err(err(
                    line_no,
                    ParseErrorKind::Arity {
                        directive,
                        expected,
                        found: args.len(),
                    },
                ))
            }
        };
        match tokens[0] {
            "v" => {
                arity("v", 1)?;
                let id = args[0].to_string();
                if !vertex_set.insert(id.clone()) {
                    return Err(err(line_no, ParseErrorKind::DuplicateVertex(id)));
                }
                vertices.push(id);
            }
            "e" => {
                arity("e", 3)?;
                for v in &args[1..] {
                    if !vertex_set.contains(*v) {
                        return Err(err(line_no, ParseErrorKind::UnknownVertex(v.to_string())));
                    }
                }
                if !edge_set.insert(args[0].to_string()) {
                    return Err(err(line_no, ParseErrorKind::DuplicateEdge(args[0].to_string())));
                }
                edges.push(EdgeRecord::new(args[0], args[1], args[2]));
            }
            "order" => {
                if order.is_some() {
                    return Err(err(line_no, ParseErrorKind::DuplicateOrder));
                }
                order = Some((line_no, args.iter().map(|s| s.to_string()).collect()));
            }
            other => return Err(err(line_no, ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }
    if !seen_header {
        return Err(err(text.lines().count().max(1), ParseErrorKind::MissingHeader));
    }

    let order = match order {
        None => LinearOrder::new(edges.iter().map(|e| e.id.clone())).expect("edge ids are unique"),
        Some((line_no, ids)) => {
            let mut listed = HashSet::new();
            for id in &ids {
                if !edge_set.contains(id) {
                    return Err(err(line_no, ParseErrorKind::UnknownEdge(id.clone())));
                }
                if !listed.insert(id.clone()) {
                    return Err(err(line_no, ParseErrorKind::RepeatedInOrder(id.clone())));
                }
            }
            if let Some(missing) = edges.iter().find(|e| !listed.contains(&e.id)) {
                return Err(err(line_no, ParseErrorKind::IncompleteOrder(missing.id.clone())));
            }
            LinearOrder::new(ids).expect("order ids checked unique")
        }
    };
    let graph = DirectedMultigraph::build(vertices, edges).map_err(|e| {
        // Duplicates and undeclared endpoints were caught line by line above.
        let kind = match e {
            GraphError::DuplicateVertex(v) => ParseErrorKind::DuplicateVertex(v),
            GraphError::DuplicateEdge(v) => ParseErrorKind::DuplicateEdge(v),
            GraphError::UndeclaredEndpoint { vertex, .. } => ParseErrorKind::UnknownVertex(vertex),
        };
        err(0, kind)
    })?;
    Ok(PopgDocument { graph, order })
}

/// Writes `graph` with its edges listed in `order`. Every edge of the graph
/// must appear in the order.
pub fn serialize_parts(graph: &DirectedMultigraph, order: &LinearOrder) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{HEADER}");
    for v in graph.vertex_ids() {
        let _ = writeln!(s, "v {v}");
    }
    for id in order.iter() {
        let e = graph.edge_ix(id).expect("order ranges over the graph's edges");
        let _ = writeln!(
            s,
            "e {id} {} {}",
            graph.vertex_id(graph.source(e)),
            graph.vertex_id(graph.target(e))
        );
    }
    s
}

pub fn serialize_popg(pop: &PopGraph) -> String {
    serialize_parts(pop.graph(), pop.edge_order())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let doc = parse_popg("popg v1\nv a\nv b\ne e1 a b\n").unwrap();
        assert_eq!(doc.graph.vertex_count(), 2);
        assert_eq!(doc.graph.edge_count(), 1);
        assert_eq!(doc.order.as_slice(), &["e1"]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let doc = parse_popg("# lead\n\npopg v1  # header\nv a # first\nv b\ne x a b\n").unwrap();
        assert_eq!(doc.graph.edge_count(), 1);
    }

    #[test]
    fn explicit_order_overrides_listing() {
        let text = "popg v1\nv a\nv b\nv c\nv d\ne x a b\ne y c d\norder y x\n";
        let doc = parse_popg(text).unwrap();
        assert_eq!(doc.order.as_slice(), &["y", "x"]);
        assert_eq!(doc.graph.edge_id(0), "x");
    }

    #[test]
    fn undeclared_vertex_names_the_line() {
        let e = parse_popg("popg v1\nv a\ne e1 a b\n").unwrap_err();
        assert_eq!(
            e,
            ParseError {
                line: 3,
                kind: ParseErrorKind::UnknownVertex("b".into())
            }
        );
        assert_eq!(e.to_string(), "line 3: undeclared vertex `b`");
    }

    #[test]
    fn syntax_errors() {
        let kind = |t: &str| parse_popg(t).unwrap_err().kind;
        assert_eq!(kind("v a\n"), ParseErrorKind::MissingHeader);
        assert_eq!(kind(""), ParseErrorKind::MissingHeader);
        assert_eq!(kind("popg v1\nq a\n"), ParseErrorKind::UnknownDirective("q".into()));
        assert!(matches!(
            kind("popg v1\nv a b\n"),
            ParseErrorKind::Arity { directive: "v", .. }
        ));
        assert!(matches!(
            kind("popg v1\nv a\ne x a\n"),
            ParseErrorKind::Arity { directive: "e", .. }
        ));
        assert_eq!(kind("popg v1\nv a\nv a\n"), ParseErrorKind::DuplicateVertex("a".into()));
        assert_eq!(
            kind("popg v1\nv a\nv b\ne x a b\ne x a b\n"),
            ParseErrorKind::DuplicateEdge("x".into())
        );
        assert_eq!(
            kind("popg v1\nv a\nv b\ne x a b\norder z\n"),
            ParseErrorKind::UnknownEdge("z".into())
        );
        assert_eq!(
            kind("popg v1\nv a\nv b\ne x a b\norder x x\n"),
            ParseErrorKind::RepeatedInOrder("x".into())
        );
        assert_eq!(
            kind("popg v1\nv a\nv b\nv c\ne x a b\ne y b c\norder x\n"),
            ParseErrorKind::IncompleteOrder("y".into())
        );
        assert_eq!(
            kind("popg v1\nv a\nv b\ne x a b\norder x\norder x\n"),
            ParseErrorKind::DuplicateOrder
        );
    }

    #[test]
    fn fixture_parses() {
        let doc = parse_popg(FIXTURE).unwrap();
        assert_eq!(doc.graph.vertex_count(), 20);
        assert_eq!(doc.graph.edge_count(), 19);
        let expected: Vec<String> = (1..=19).map(|i| i.to_string()).collect();
        assert_eq!(doc.order.as_slice(), expected.as_slice());
    }

    #[test]
    fn serialize_lists_edges_in_order() {
        let text = "popg v1\nv a\nv b\nv c\nv d\ne x a b\ne y c d\norder y x\n";
        let doc = parse_popg(text).unwrap();
        let out = serialize_parts(&doc.graph, &doc.order);
        assert_eq!(out, "popg v1\nv a\nv b\nv c\nv d\ne y c d\ne x a b\n");
    }
}
