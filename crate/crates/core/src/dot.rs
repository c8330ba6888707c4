//! Graphviz DOT emission. Output is deterministic: nodes appear in
//! declaration order and edges in row-major order.

use std::fmt::Write;

use crate::frame::{Relation, TransitionFrame};
use crate::operator::OperatorTable;
use crate::order::Lattice;
use crate::proposition::PropositionPoset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The transition graph of `relation` over the frame's states.
pub fn relation_dot(frame: &TransitionFrame, relation: &Relation, name: &str) -> String {
    let states = frame.states();
    let mut out = format!("digraph {} {{\n", quote(name));
    for s in states.iter() {
        let _ = writeln!(out, "  {};", quote(s));
    }
    for (s, t) in relation.pairs() {
        let _ = writeln!(out, "  {} -> {};", quote(&states[s]), quote(&states[t]));
    }
    out.push_str("}\n");
    out
}

fn hasse(name: &str, nodes: &[&str], covers: &[(usize, usize)]) -> String {
    let mut out = format!("graph {} {{\n  rankdir=BT;\n", quote(name));
    for n in nodes {
        let _ = writeln!(out, "  {};", quote(n));
    }
    for &(lo, hi) in covers {
        let _ = writeln!(out, "  {} -- {};", quote(nodes[lo]), quote(nodes[hi]));
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of a proposition poset: exactly its cover edges, drawn
/// bottom to top.
pub fn poset_hasse_dot(poset: &PropositionPoset, name: &str) -> String {
    let order = poset.to_poset();
    let nodes: Vec<&str> = poset.rows().iter().map(|r| r.name.as_str()).collect();
    hasse(name, &nodes, &order.covers())
}

pub fn lattice_hasse_dot(lattice: &Lattice) -> String {
    let nodes: Vec<&str> = lattice.element_names().iter().map(String::as_str).collect();
    let covers: Vec<(usize, usize)> = lattice
        .covers()
        .into_iter()
        .map(|(a, b)| (a.index(), b.index()))
        .collect();
    hasse(lattice.name(), &nodes, &covers)
}

/// Each row points at its image; images outside the domain are drawn as
/// boxes labelled with their tuple.
pub fn operator_dot(table: &OperatorTable, name: &str) -> String {
    let domain = table.domain();
    let mut out = format!("digraph {} {{\n", quote(name));
    for row in domain.rows() {
        let _ = writeln!(out, "  {};", quote(&row.name));
    }
    let mut outside: Vec<String> = Vec::new();
    for (i, image) in table.entries().iter().enumerate() {
        let label = domain.label(image);
        if domain.index_of_vector(image).is_none() && !outside.contains(&label) {
            let _ = writeln!(out, "  {} [shape=box];", quote(&label));
            outside.push(label.clone());
        }
        let _ = writeln!(out, "  {} -> {};", quote(domain.name(i)), quote(&label));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn relation_graph() {
        let f = TransitionFrame::new(&["a", "b"], &[("a", "b"), ("b", "b")]).unwrap();
        let dot = relation_dot(&f, f.relation(), "R");
        assert_eq!(
            dot,
            "digraph \"R\" {\n  \"a\";\n  \"b\";\n  \"a\" -> \"b\";\n  \"b\" -> \"b\";\n}\n"
        );
    }

    #[test]
    fn lattice_graph_has_cover_edges_only() {
        let dot = lattice_hasse_dot(&Lattice::chain(3));
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert!(!dot.contains("\"0\" -- \"2\""));
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
        let l = Arc::new(Lattice::chain2());
        let p = PropositionPoset::boolean_power(l, Arc::from(vec!["x".to_string()])).unwrap();
        assert!(poset_hasse_dot(&p, "B").contains("\"(0)\" -- \"(1)\""));
    }
}
