//! Small named graphs that recur in tests, benchmarks and documentation.

use crate::graph::{named_graph, Graph};

/// The biclaw: the claw `d-{f,g,h}` with every leaf extended by one more
/// edge (`f-a`, `g-b`, `h-c`). Not a circular-arc graph.
pub fn biclaw() -> Graph {
    named_graph(
        &["a", "b", "c", "d", "f", "g", "h"],
        &[
            ("d", "f"),
            ("f", "a"),
            ("d", "g"),
            ("d", "h"),
            ("g", "b"),
            ("h", "c"),
        ],
    )
}

/// The biclaw with the leaf `c` removed. A circular-arc graph.
pub fn biclaw_minus_c() -> Graph {
    named_graph(
        &["a", "b", "d", "f", "g", "h"],
        &[("d", "f"), ("f", "a"), ("d", "g"), ("d", "h"), ("g", "b")],
    )
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("valid cycle")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("valid path")
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("valid clique")
}
