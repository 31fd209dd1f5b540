//! Edge classification by neighborhood containment and spanning pairs, and
//! the avoid predicate on walks.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Direction of an inclusion edge `type_of(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Containment {
    /// N[u] ⊆ N[v]
    FirstInSecond,
    /// N[v] ⊆ N[u]
    SecondInFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeType {
    NonEdge,
    Inclusion(Containment),
    Overlap1,
    Overlap2,
}

impl EdgeType {
    pub fn label(self) -> Label {
        match self {
            EdgeType::NonEdge => Label::NonEdge,
            EdgeType::Inclusion(_) => Label::Inclusion,
            EdgeType::Overlap1 | EdgeType::Overlap2 => Label::Overlap,
        }
    }

    fn reversed(self) -> EdgeType {
        match self {
            EdgeType::Inclusion(Containment::FirstInSecond) => {
                EdgeType::Inclusion(Containment::SecondInFirst)
            }
            EdgeType::Inclusion(Containment::SecondInFirst) => {
                EdgeType::Inclusion(Containment::FirstInSecond)
            }
            t => t,
        }
    }
}

/// The three-way label seen by the avoid predicate and the Δ machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    NonEdge,
    Overlap,
    Inclusion,
}

/// Anything that labels every ordered vertex pair symmetrically, with
/// `label(u, u) == Inclusion`.
pub trait EdgeLabels {
    fn vertex_count(&self) -> usize;
    fn label(&self, u: Vertex, v: Vertex) -> Label;

    fn is_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.label(u, v) != Label::NonEdge
    }

    /// Whether `z` avoids the edge (or loop) `xy`.
    fn avoids_edge(&self, z: Vertex, x: Vertex, y: Vertex) -> bool {
        let zx = self.label(z, x);
        let zy = self.label(z, y);
        if zx == Label::Inclusion || zy == Label::Inclusion {
            return false;
        }
        !(zx == Label::Overlap && zy == Label::Overlap && self.label(x, y) == Label::Overlap)
    }

    /// Whether `z` avoids the walk. A repeated vertex is a loop step.
    fn avoids_walk(&self, z: Vertex, walk: &[Vertex]) -> bool {
        match walk {
            [] => true,
            [x] => self.avoids_edge(z, *x, *x),
            _ => walk.windows(2).all(|w| self.avoids_edge(z, w[0], w[1])),
        }
    }

    /// Consecutive vertices are equal or adjacent.
    fn is_walk(&self, walk: &[Vertex]) -> bool {
        let n = self.vertex_count();
        walk.iter().all(|&v| v < n) && walk.windows(2).all(|w| self.is_edge(w[0], w[1]))
    }

    /// `p` avoids `q`: equal length, and at every step `p_i` avoids
    /// `q_i q_{i+1}` and `q_{i+1}` avoids `p_i p_{i+1}`.
    fn walks_avoid(&self, p: &[Vertex], q: &[Vertex]) -> bool {
        p.len() == q.len()
            && (0..p.len().saturating_sub(1)).all(|i| {
                self.avoids_edge(p[i], q[i], q[i + 1]) && self.avoids_edge(q[i + 1], p[i], p[i + 1])
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("vertex {0} is universal")]
    UniversalVertex(Vertex),
    #[error("vertices {0} and {1} are true twins")]
    TrueTwins(Vertex, Vertex),
}

/// A graph with every vertex pair classified.
#[derive(Clone, PartialEq, Eq)]
pub struct TypedGraph {
    graph: Graph,
    types: Vec<EdgeType>,
}

impl std::fmt::Debug for TypedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TypedGraph")
            .field("graph", &self.graph)
            .finish()
    }
}

/// `{x : N[x] ⊆ N[u]}` for every `u`.
fn subset_columns(g: &Graph) -> Vec<FixedBitSet> {
    let n = g.n();
    let mut cols = vec![FixedBitSet::with_capacity(n); n];
    for x in 0..n {
        for (u, col) in cols.iter_mut().enumerate() {
            if g.contained_in(x, u) {
                col.insert(x);
            }
        }
    }
    cols
}

/// Whether every vertex outside N[v] has its closed neighborhood inside
/// N[u], and vice versa, given the subset columns.
fn spanning(g: &Graph, sub: &[FixedBitSet], u: Vertex, v: Vertex) -> bool {
    // every x outside N[b] lies in sub[a]
    let covers = |a: Vertex, b: Vertex| g.closed_neighborhood(b).union_count(&sub[a]) == g.n();
    covers(u, v) && covers(v, u)
}

/// Classifies every pair of `g`. Fails if `g` has a universal vertex or true
/// twins.
pub fn classify_all(g: &Graph) -> Result<TypedGraph, ClassifyError> {
    let n = g.n();
    if n > 1 {
        if let Some(u) = (0..n).find(|&u| g.is_universal(u)) {
            return Err(ClassifyError::UniversalVertex(u));
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.are_true_twins(u, v) {
                return Err(ClassifyError::TrueTwins(u, v));
            }
        }
    }
    Ok(classify_unchecked(g))
}

fn classify_unchecked(g: &Graph) -> TypedGraph {
    let n = g.n();
    let sub = subset_columns(g);
    let mut types = vec![EdgeType::NonEdge; n * n];
    for u in 0..n {
        types[u * n + u] = EdgeType::Inclusion(Containment::FirstInSecond);
        for v in u + 1..n {
            let t = if !g.adjacent(u, v) {
                EdgeType::NonEdge
            } else if g.contained_in(u, v) {
                EdgeType::Inclusion(Containment::FirstInSecond)
            } else if g.contained_in(v, u) {
                EdgeType::Inclusion(Containment::SecondInFirst)
            } else if spanning(g, &sub, u, v) {
                EdgeType::Overlap2
            } else {
                EdgeType::Overlap1
            };
            types[u * n + v] = t;
            types[v * n + u] = t.reversed();
        }
    }
    TypedGraph {
        graph: g.clone(),
        types,
    }
}

impl TypedGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn type_of(&self, u: Vertex, v: Vertex) -> EdgeType {
        self.types[u * self.n() + v]
    }

    pub fn overlaps(&self, u: Vertex, v: Vertex) -> bool {
        matches!(self.type_of(u, v), EdgeType::Overlap1 | EdgeType::Overlap2)
    }

    /// Every non-adjacent spanning pair, as `(u, v)` with `u < v`.
    pub fn circular_pair_list(&self) -> Vec<(Vertex, Vertex)> {
        let g = &self.graph;
        let sub = subset_columns(g);
        let n = g.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !g.adjacent(u, v) && spanning(g, &sub, u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

impl EdgeLabels for TypedGraph {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn label(&self, u: Vertex, v: Vertex) -> Label {
        self.type_of(u, v).label()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("vertex {vertex} lies in circular pairs with both {first} and {second}")]
    NotUnique {
        vertex: Vertex,
        first: Vertex,
        second: Vertex,
    },
}

/// The map `u ↦ ū` over circularly paired vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircularPairing {
    partner: Vec<Option<Vertex>>,
}

impl CircularPairing {
    pub fn from_pairs(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self, PairingError> {
        let mut partner = vec![None; n];
        for &(u, v) in pairs {
            for (a, b) in [(u, v), (v, u)] {
                if let Some(prev) = partner[a] {
                    if prev != b {
                        return Err(PairingError::NotUnique {
                            vertex: a,
                            first: prev,
                            second: b,
                        });
                    }
                }
                partner[a] = Some(b);
            }
        }
        Ok(CircularPairing { partner })
    }

    pub fn partner(&self, u: Vertex) -> Option<Vertex> {
        self.partner.get(u).copied().flatten()
    }

    /// S: vertices that have a partner, ascending.
    pub fn paired(&self) -> Vec<Vertex> {
        (0..self.partner.len())
            .filter(|&u| self.partner[u].is_some())
            .collect()
    }

    pub fn is_total(&self) -> bool {
        self.partner.iter().all(Option::is_some)
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }
}

/// All circular pairs of `t`.
pub fn circular_pairs(t: &TypedGraph) -> Result<CircularPairing, PairingError> {
    CircularPairing::from_pairs(t.n(), &t.circular_pair_list())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error("added vertex {0} is left without a partner")]
    AddedUnpaired(Vertex),
    #[error("completion check failed: {0}")]
    Check(#[from] CompletionViolation),
}

/// A circular completion: the original graph occupies indices `0..base_n`,
/// added vertices follow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub typed: TypedGraph,
    pub pairing: CircularPairing,
    pub base_n: usize,
}

impl Completion {
    pub fn graph(&self) -> &Graph {
        self.typed.graph()
    }

    pub fn added(&self) -> std::ops::Range<Vertex> {
        self.base_n..self.typed.n()
    }

    pub fn partner(&self, u: Vertex) -> Vertex {
        self.pairing
            .partner(u)
            .expect("completion is circularly paired")
    }
}

/// Builds the circular completion of `t` by repeatedly giving the smallest
/// unpaired vertex `v` a partner adjacent to every `u` with N[u] ⊄ N[v].
pub fn complete(t: &TypedGraph) -> Result<Completion, CompletionError> {
    let base_n = t.n();
    let mut h = t.graph().clone();
    let mut pairing = circular_pairs(t)?;
    while let Some(v) = (0..h.n()).find(|&u| pairing.partner(u).is_none()) {
        if v >= base_n {
            return Err(CompletionError::AddedUnpaired(v));
        }
        let nbrs: Vec<Vertex> = (0..h.n()).filter(|&u| !h.contained_in(u, v)).collect();
        let name = format!("~{}", h.name(v));
        let vbar = h.add_vertex(name);
        for u in nbrs {
            h.add_edge(u, vbar).expect("fresh vertex");
        }
        pairing = CircularPairing::from_pairs(h.n(), &classify_unchecked(&h).circular_pair_list())?;
    }
    let typed = classify_unchecked(&h);
    let c = Completion {
        typed,
        pairing,
        base_n,
    };
    verify_completion(t, &c.typed, &c.pairing)?;
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionViolation {
    #[error("the first {0} vertices of H do not induce G")]
    NotInduced(usize),
    #[error("pair ({0}, {1}) changes type")]
    TypeChanged(Vertex, Vertex),
    #[error("H is not circularly paired by the given pairing at vertex {0}")]
    NotCircularlyPaired(Vertex),
    #[error("H has {got} vertices, expected {expected}")]
    Cardinality { expected: usize, got: usize },
    #[error("completion is reducible: {0}")]
    Reducible(ClassifyError),
    #[error("added vertex {0} is not paired with an original vertex")]
    AddedNotPairedWithOriginal(Vertex),
}

/// Checks that `h` with `pairing` is a circular completion of `g`, where
/// `g` is embedded as `h`'s first `g.n()` vertices.
pub fn verify_completion(
    g: &TypedGraph,
    h: &TypedGraph,
    pairing: &CircularPairing,
) -> Result<(), CompletionViolation> {
    let n = g.n();
    if h.n() < n {
        return Err(CompletionViolation::NotInduced(n));
    }
    let base: Vec<Vertex> = (0..n).collect();
    if !h.graph().induced(&base).same_adjacency(g.graph()) {
        return Err(CompletionViolation::NotInduced(n));
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.type_of(u, v) != h.type_of(u, v) {
                return Err(CompletionViolation::TypeChanged(u, v));
            }
        }
    }
    let actual = circular_pairs(h).map_err(|e| match e {
        PairingError::NotUnique { vertex, .. } => CompletionViolation::NotCircularlyPaired(vertex),
    })?;
    if pairing.len() != h.n() {
        return Err(CompletionViolation::NotCircularlyPaired(0));
    }
    for u in 0..h.n() {
        match (pairing.partner(u), actual.partner(u)) {
            (Some(a), Some(b)) if a == b => {}
            _ => return Err(CompletionViolation::NotCircularlyPaired(u)),
        }
    }
    let s = circular_pairs(g)
        .map_err(|e| match e {
            PairingError::NotUnique { vertex, .. } => {
                CompletionViolation::NotCircularlyPaired(vertex)
            }
        })?
        .paired()
        .len();
    if h.n() != 2 * n - s {
        return Err(CompletionViolation::Cardinality {
            expected: 2 * n - s,
            got: h.n(),
        });
    }
    classify_all(h.graph()).map_err(CompletionViolation::Reducible)?;
    for a in n..h.n() {
        if pairing.partner(a).is_none_or(|p| p >= n) {
            return Err(CompletionViolation::AddedNotPairedWithOriginal(a));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("vertex {0} out of range")]
    OutOfRange(Vertex),
    #[error("{0} and {1} are consecutive on the walk but not adjacent")]
    NotAdjacent(Vertex, Vertex),
}

/// Whether `z` avoids `walk` in `t`. Consecutive equal vertices are loops.
pub fn avoids(t: &TypedGraph, z: Vertex, walk: &[Vertex]) -> Result<bool, WalkError> {
    let n = t.n();
    if let Some(&v) = walk.iter().chain([&z]).find(|&&v| v >= n) {
        return Err(WalkError::OutOfRange(v));
    }
    if let Some(w) = walk.windows(2).find(|w| !t.is_edge(w[0], w[1])) {
        return Err(WalkError::NotAdjacent(w[0], w[1]));
    }
    Ok(t.avoids_walk(z, walk))
}
