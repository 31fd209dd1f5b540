//! Dense undirected graphs with an implicit loop at every vertex.
//!
//! Every vertex is adjacent to itself, so `closed_neighborhood(u)` is the
//! stored row and always contains `u`. Adjacency rows are bitsets, which keeps
//! the neighborhood-containment tests used throughout the pipeline cheap.

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// Vertex index into a [`Graph`].
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("explicit loop at vertex {0}; loops are implicit")]
    SelfLoop(Vertex),
    #[error("expected {expected} vertex names, got {got}")]
    NameCount { expected: usize, got: usize },
}

/// A simple undirected graph on vertices `0..n`, with implicit loops.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
    names: Vec<String>,
}

impl Graph {
    /// Edgeless graph on `n` vertices named `"0".."n-1"`.
    pub fn empty(n: usize) -> Self {
        let rows = (0..n)
            .map(|u| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(u);
                row
            })
            .collect();
        Graph {
            rows,
            names: (0..n).map(|u| u.to_string()).collect(),
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Replaces the vertex names.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GraphError> {
        if names.len() != self.n() {
            return Err(GraphError::NameCount {
                expected: self.n(),
                got: names.len(),
            });
        }
        self.names = names;
        Ok(self)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(())
    }

    /// Appends an isolated vertex and returns its index.
    pub fn add_vertex(&mut self, name: String) -> Vertex {
        let n = self.n() + 1;
        for row in &mut self.rows {
            row.grow(n);
        }
        let mut row = FixedBitSet::with_capacity(n);
        row.insert(n - 1);
        self.rows.push(row);
        self.names.push(name);
        n - 1
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// True iff `uv` is an edge or `u == v`.
    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u].contains(v)
    }

    /// N[u], the closed neighborhood.
    #[inline]
    pub fn closed_neighborhood(&self, u: Vertex) -> &FixedBitSet {
        &self.rows[u]
    }

    /// Open neighbors of `u` in ascending order.
    pub fn neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.rows[u].ones().filter(move |&v| v != u)
    }

    /// |N[u]|.
    pub fn closed_degree(&self, u: Vertex) -> usize {
        self.rows[u].count_ones(..)
    }

    /// N[u] ⊆ N[v].
    #[inline]
    pub fn contained_in(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u].is_subset(&self.rows[v])
    }

    pub fn is_universal(&self, u: Vertex) -> bool {
        self.closed_degree(u) == self.n()
    }

    pub fn are_true_twins(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.rows[u] == self.rows[v]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in self.rows[u].ones() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones(..) - 1)
            .sum::<usize>()
            / 2
    }

    pub fn name(&self, u: Vertex) -> &str {
        &self.names[u]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|s| s == name)
    }

    /// Subgraph induced on `vertices`, re-indexed in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.rows[i].insert(j);
                    g.rows[j].insert(i);
                }
            }
        }
        g.names = vertices.iter().map(|&u| self.names[u].clone()).collect();
        g
    }

    /// Same graph with vertex `u` moved to position `perm[u]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        let n = self.n();
        let mut inverse = vec![0; n];
        for (u, &p) in perm.iter().enumerate() {
            inverse[p] = u;
        }
        self.induced(&inverse)
    }

    /// Same adjacency ignoring names.
    pub fn same_adjacency(&self, other: &Graph) -> bool {
        self.rows == other.rows
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}-{}", self.names[u], self.names[v]))
            .collect();
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &edges)
            .finish()
    }
}

/// Convenience constructor used by tests and fixtures: vertices named by
/// `names`, edges given as name pairs.
pub fn named_graph(names: &[&str], edges: &[(&str, &str)]) -> Graph {
    let index = |s: &str| {
        names
            .iter()
            .position(|&x| x == s)
            .unwrap_or_else(|| panic!("unknown vertex {s}"))
    };
    let pairs: Vec<_> = edges.iter().map(|&(a, b)| (index(a), index(b))).collect();
    Graph::from_edges(names.len(), &pairs)
        .expect("fixture edges are valid")
        .with_names(names.iter().map(|s| s.to_string()).collect())
        .expect("name count matches")
}
