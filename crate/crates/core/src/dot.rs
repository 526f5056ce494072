//! Graphviz DOT export.

use std::fmt::Write;

use crate::butterfly::Butterfly;
use crate::graph::{Edge, Graph};

/// Undirected DOT with optional highlighted edges. Labels are used as node
/// names when the graph has them.
pub fn to_dot(g: &Graph, highlight: &[Edge]) -> String {
    let mut s = String::from("graph G {\n  node [shape=circle, fontsize=10];\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(s, "  {v} [label=\"{}\"];", g.label(v));
    }
    write_edges(&mut s, g, highlight);
    s.push_str("}\n");
    s
}

/// Butterfly layout: one column per level, rows top to bottom.
pub fn butterfly_to_dot(bf: &Butterfly, highlight: &[Edge]) -> String {
    let g = bf.graph();
    let mut s = String::from("graph G {\n  rankdir=LR;\n  node [shape=circle, fontsize=10];\n");
    for level in 0..bf.levels() {
        s.push_str("  { rank=same;");
        for v in bf.level_vertices(level) {
            let _ = write!(s, " {v} [label=\"{}\"];", g.label(v));
        }
        s.push_str(" }\n");
    }
    write_edges(&mut s, g, highlight);
    s.push_str("}\n");
    s
}

fn write_edges(s: &mut String, g: &Graph, highlight: &[Edge]) {
    for e in g.edges() {
        if highlight.contains(e) {
            let _ = writeln!(s, "  {} -- {} [color=red, penwidth=3];", e.u, e.v);
        } else {
            let _ = writeln!(s, "  {} -- {};", e.u, e.v);
        }
    }
}
