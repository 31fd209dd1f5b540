//! Random graph generators.

use rand::Rng;

use crate::delta::LabelledGraph;
use crate::edge_types::Label;
use crate::graph::{Graph, Vertex};

/// Each pair is an edge independently with probability `p`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("pairs in range")
}

/// `n` random subintervals of `[0, 1)`.
pub fn random_intervals<R: Rng>(n: usize, rng: &mut R) -> Vec<(f64, f64)> {
    (0..n)
        .map(|_| {
            let (a, b): (f64, f64) = (rng.random(), rng.random());
            (a.min(b), a.max(b))
        })
        .collect()
}

pub fn interval_graph(intervals: &[(f64, f64)]) -> Graph {
    let n = intervals.len();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let ((a, b), (c, d)) = (intervals[u], intervals[v]);
            if a <= d && c <= b {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("pairs in range")
}

pub fn random_interval_graph<R: Rng>(n: usize, rng: &mut R) -> Graph {
    interval_graph(&random_intervals(n, rng))
}

/// `n` random arcs of the unit circle, each `(start, length)` with the
/// length below `max_len`.
pub fn random_arcs<R: Rng>(n: usize, max_len: f64, rng: &mut R) -> Vec<(f64, f64)> {
    (0..n)
        .map(|_| (rng.random::<f64>(), rng.random::<f64>() * max_len))
        .collect()
}

pub fn arc_graph(arcs: &[(f64, f64)]) -> Graph {
    let contains = |(s, len): (f64, f64), x: f64| (x - s).rem_euclid(1.0) <= len;
    let n = arcs.len();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if contains(arcs[u], arcs[v].0) || contains(arcs[v], arcs[u].0) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("pairs in range")
}

pub fn random_arc_graph<R: Rng>(n: usize, max_len: f64, rng: &mut R) -> Graph {
    arc_graph(&random_arcs(n, max_len, rng))
}

/// A consistently labelled graph read off random intervals (crossing pairs
/// overlap, nested pairs are inclusions oriented outward-in), after which
/// each pair is relabelled overlap or non-edge at random with probability
/// `noise`. Draws are repeated until the labels pass validation.
pub fn random_labelled_graph<R: Rng>(n: usize, noise: f64, rng: &mut R) -> LabelledGraph {
    loop {
        let ivals = random_intervals(n, rng);
        let mut labels = vec![Label::Inclusion; n * n];
        let mut dc = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let ((a, b), (c, d)) = (ivals[u], ivals[v]);
                let mut l = if b < c || d < a {
                    Label::NonEdge
                } else if (a < c && d < b) || (c < a && b < d) {
                    Label::Inclusion
                } else {
                    Label::Overlap
                };
                if rng.random_bool(noise) {
                    l = if rng.random_bool(0.5) {
                        Label::Overlap
                    } else {
                        Label::NonEdge
                    };
                }
                labels[u * n + v] = l;
                labels[v * n + u] = l;
                if l == Label::Inclusion {
                    dc.push(if b - a >= d - c { (u, v) } else { (v, u) });
                }
            }
        }
        if let Ok(l) = LabelledGraph::new(n, labels, &dc) {
            return l;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn interval_adjacency() {
        let g = interval_graph(&[(0.0, 0.3), (0.2, 0.5), (0.6, 0.9)]);
        assert!(g.adjacent(0, 1) && !g.adjacent(1, 2) && !g.adjacent(0, 2));
    }

    #[test]
    fn arc_adjacency() {
        // the second arc wraps through 0 and meets the first
        let g = arc_graph(&[(0.05, 0.1), (0.9, 0.2), (0.4, 0.1)]);
        assert!(g.adjacent(0, 1) && !g.adjacent(0, 2) && !g.adjacent(1, 2));
    }

    #[test]
    fn extreme_probabilities() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(random_graph(6, 0.0, &mut rng).edge_count(), 0);
        assert_eq!(random_graph(6, 1.0, &mut rng).edge_count(), 15);
    }
}
