//! Graphviz output for knotting graphs.

use circarc_core::knotting::{KnottingGraph, TwoColoring};
use circarc_core::Graph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Copy `(u, i)` is labelled `name/i` with `i` counted from 1.
pub fn copy_label(h: &Graph, k: &KnottingGraph, copy: usize) -> String {
    let (u, i) = k.copies[copy];
    format!("{}/{}", h.name(u), i + 1)
}

/// An undirected DOT graph; with a 2-coloring, one side is filled.
pub fn knotting_dot(h: &Graph, k: &KnottingGraph, coloring: &TwoColoring) -> String {
    let mut out = format!(
        "graph knotting {{\n  label={};\n",
        quote(&format!("anchor {}", h.name(k.anchor)))
    );
    for c in 0..k.copies.len() {
        let label = quote(&copy_label(h, k, c));
        match coloring {
            TwoColoring::Colors(side) if side[c] => {
                out.push_str(&format!("  {label} [style=filled, fillcolor=lightgray];\n"))
            }
            _ => out.push_str(&format!("  {label};\n")),
        }
    }
    for &(a, b) in &k.edges {
        out.push_str(&format!(
            "  {} -- {};\n",
            quote(&copy_label(h, k, a)),
            quote(&copy_label(h, k, b))
        ));
    }
    out.push_str("}\n");
    out
}
