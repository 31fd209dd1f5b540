//! Edge-labelled graphs, Δ-implication classes and interval orientations.
//!
//! Labels need not agree with the neighborhoods of the labelled graph
//! itself; the recognizer feeds in labels inherited from a larger graph.

use thiserror::Error;

use crate::edge_types::{EdgeLabels, Label, TypedGraph};
use crate::graph::Vertex;
use crate::pairwalk::PairSpace;

/// An edge-labelled graph with an orientation `dc` of its inclusion edges.
/// `dc(u, v)` means u's interval must contain v's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    n: usize,
    labels: Vec<Label>,
    dc: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("label matrix has {got} entries, expected {expected}")]
    Size { expected: usize, got: usize },
    #[error("labels of ({0}, {1}) and ({1}, {0}) differ")]
    Asymmetric(Vertex, Vertex),
    #[error("loop at {0} is not labelled inclusion")]
    Loop(Vertex),
    #[error("inclusion pair ({0}, {1}) is not oriented exactly once")]
    Unoriented(Vertex, Vertex),
    #[error("oriented pair ({0}, {1}) is not an inclusion pair")]
    NotInclusion(Vertex, Vertex),
    #[error("orientation is not transitive at ({0}, {1}, {2})")]
    NotTransitive(Vertex, Vertex, Vertex),
    #[error("({0}, {1}) is oriented but N[{1}] is not inside N[{0}]")]
    NotContained(Vertex, Vertex),
}

impl LabelledGraph {
    /// Builds and validates a consistently edge-labelled graph. `labels` is
    /// the row-major `n × n` label matrix.
    pub fn new(n: usize, labels: Vec<Label>, dc: &[(Vertex, Vertex)]) -> Result<Self, LabelError> {
        if labels.len() != n * n {
            return Err(LabelError::Size {
                expected: n * n,
                got: labels.len(),
            });
        }
        let mut m = vec![false; n * n];
        for &(u, v) in dc {
            if u >= n || v >= n || u == v || labels[u * n + v] != Label::Inclusion {
                return Err(LabelError::NotInclusion(u, v));
            }
            m[u * n + v] = true;
        }
        let l = LabelledGraph { n, labels, dc: m };
        l.validate()?;
        Ok(l)
    }

    fn validate(&self) -> Result<(), LabelError> {
        let n = self.n;
        for u in 0..n {
            if self.label(u, u) != Label::Inclusion {
                return Err(LabelError::Loop(u));
            }
            for v in 0..n {
                if self.label(u, v) != self.label(v, u) {
                    return Err(LabelError::Asymmetric(u, v));
                }
                if u < v && self.label(u, v) == Label::Inclusion && self.dc(u, v) == self.dc(v, u) {
                    return Err(LabelError::Unoriented(u, v));
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                if !self.dc(u, v) {
                    continue;
                }
                if (0..n).any(|x| self.is_edge(v, x) && !self.is_edge(u, x)) {
                    return Err(LabelError::NotContained(u, v));
                }
                if let Some(w) = (0..n).find(|&w| self.dc(v, w) && !self.dc(u, w)) {
                    return Err(LabelError::NotTransitive(u, v, w));
                }
            }
        }
        Ok(())
    }

    /// The subgraph of `h` induced on `vertices`, keeping `h`'s labels and
    /// orienting inclusion edges by neighborhood containment in `h`.
    pub fn inherited(h: &TypedGraph, vertices: &[Vertex]) -> Self {
        let n = vertices.len();
        let g = h.graph();
        let mut labels = vec![Label::NonEdge; n * n];
        let mut dc = vec![false; n * n];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                let l = h.label(u, v);
                labels[i * n + j] = l;
                if i != j && l == Label::Inclusion {
                    dc[i * n + j] = g.contained_in(v, u);
                }
            }
        }
        LabelledGraph { n, labels, dc }
    }

    /// Sub-labelled graph on `vertices`, re-indexed in that order.
    pub fn induced(&self, vertices: &[Vertex]) -> Self {
        let k = vertices.len();
        let mut labels = Vec::with_capacity(k * k);
        let mut dc = Vec::with_capacity(k * k);
        for &u in vertices {
            for &v in vertices {
                labels.push(self.label(u, v));
                dc.push(self.dc(u, v));
            }
        }
        LabelledGraph { n: k, labels, dc }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dc(&self, u: Vertex, v: Vertex) -> bool {
        self.dc[u * self.n + v]
    }

    /// Ordered pairs labelled overlap or non-edge.
    fn has_free_pairs(&self) -> bool {
        self.labels.iter().any(|&l| l != Label::Inclusion)
    }
}

impl EdgeLabels for LabelledGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn label(&self, u: Vertex, v: Vertex) -> Label {
        self.labels[u * self.n + v]
    }
}

/// Whether `p` and `q` are related by a single Δ step: they share one
/// coordinate and the edge (or loop) joining the other coordinates avoids
/// the shared one.
pub fn delta_step<L: EdgeLabels>(l: &L, p: (Vertex, Vertex), q: (Vertex, Vertex)) -> bool {
    if p.1 == q.1 {
        let (x, y, z) = (p.0, q.0, p.1);
        l.is_edge(x, y) && l.avoids_edge(z, x, y)
    } else if p.0 == q.0 {
        let (x, y, z) = (p.1, q.1, p.0);
        l.is_edge(x, y) && l.avoids_edge(z, x, y)
    } else {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClass {
    pub id: usize,
    /// Lexicographically sorted.
    pub pairs: Vec<(Vertex, Vertex)>,
    pub inverse_id: usize,
}

impl PairClass {
    pub fn is_self_inverse(&self) -> bool {
        self.id == self.inverse_id
    }

    pub fn contains(&self, p: (Vertex, Vertex)) -> bool {
        self.pairs.binary_search(&p).is_ok()
    }
}

/// Union of the coordinates of the class's pairs, ascending.
pub fn span(c: &PairClass) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = c.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The Δ-implication classes of a labelled graph, numbered in order of their
/// lexicographically least pair, with the search forest needed to replay
/// chains inside a class.
pub struct ImplicationClasses {
    pub classes: Vec<PairClass>,
    space: PairSpace,
}

impl ImplicationClasses {
    pub fn class_of(&self, a: Vertex, b: Vertex) -> Option<usize> {
        self.space.component(a, b)
    }

    /// A sequence of pairs from `p` to `q`, each related to the next by one
    /// Δ step.
    pub fn chain(&self, p: (Vertex, Vertex), q: (Vertex, Vertex)) -> Option<Vec<(Vertex, Vertex)>> {
        self.space.chain(p, q)
    }
}

pub fn implication_classes<L: EdgeLabels>(l: &L) -> ImplicationClasses {
    let space = PairSpace::build(l, None);
    let classes = space
        .members()
        .into_iter()
        .enumerate()
        .map(|(id, pairs)| {
            let (a, b) = pairs[0];
            let inverse_id = space
                .component(b, a)
                .expect("reversal of a legal pair is legal");
            PairClass {
                id,
                pairs,
                inverse_id,
            }
        })
        .collect();
    ImplicationClasses { classes, space }
}

/// `{a, b}` together with a Δ chain from `(a, b)` to `(b, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaInvertiblePair {
    pub a: Vertex,
    pub b: Vertex,
    pub chain: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("Δ-invertible pair {{{}, {}}}", .0.a, .0.b)]
    DeltaInvertiblePair(DeltaInvertiblePair),
    #[error("vertex {outside} does not see the module {module:?} uniformly")]
    NonUniformQuotientLabel {
        outside: Vertex,
        module: Vec<Vertex>,
    },
    #[error("graph without proper spans has {0} implication classes")]
    NotTwoClasses(usize),
    #[error("orientation is not a transitive tournament")]
    TournamentNotTransitive,
    #[error("resulting order {0:?} is not an interval ordering")]
    NotIntervalOrdering(Vec<Vertex>),
    #[error("{between} lies between {x} and {y} although it avoids their edge")]
    AvoidingVertexBetween {
        x: Vertex,
        y: Vertex,
        between: Vertex,
    },
}

impl OrientationError {
    fn relabel(self, map: &[Vertex]) -> Self {
        match self {
            OrientationError::DeltaInvertiblePair(p) => {
                OrientationError::DeltaInvertiblePair(DeltaInvertiblePair {
                    a: map[p.a],
                    b: map[p.b],
                    chain: p.chain.iter().map(|&(x, y)| (map[x], map[y])).collect(),
                })
            }
            OrientationError::NonUniformQuotientLabel { outside, module } => {
                OrientationError::NonUniformQuotientLabel {
                    outside: map[outside],
                    module: module.iter().map(|&v| map[v]).collect(),
                }
            }
            OrientationError::NotIntervalOrdering(o) => {
                OrientationError::NotIntervalOrdering(o.iter().map(|&v| map[v]).collect())
            }
            e => e,
        }
    }
}

/// An interval orientation: a linear order whose restriction to overlap and
/// non-edge pairs is `oriented`, and to inclusion pairs is `dc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub order: Vec<Vertex>,
    /// `(a, b)` with `a` before `b`, lexicographically sorted.
    pub oriented: Vec<(Vertex, Vertex)>,
}

/// Orders `l` so that overlap and non-edge pairs follow a Δ-closed acyclic
/// orientation and inclusion pairs follow `dc`, recursing on the span of the
/// smallest implication class whenever that span is a proper subset.
pub fn interval_orientation(l: &LabelledGraph) -> Result<Orientation, OrientationError> {
    let order = orient(l)?;
    if !verify_interval_ordering(l, &order) {
        return Err(OrientationError::NotIntervalOrdering(order));
    }
    let n = l.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for x in 0..n {
        for y in x + 1..n {
            if !l.is_edge(x, y) {
                continue;
            }
            let (lo, hi) = (pos[x].min(pos[y]), pos[x].max(pos[y]));
            for &z in &order[lo + 1..hi] {
                if l.avoids_edge(z, x, y) {
                    return Err(OrientationError::AvoidingVertexBetween { x, y, between: z });
                }
            }
        }
    }
    let mut oriented = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && l.label(a, b) != Label::Inclusion && pos[a] < pos[b] {
                oriented.push((a, b));
            }
        }
    }
    Ok(Orientation { order, oriented })
}

/// Vertices sorted by the number of others they beat, after checking that
/// `beats` is a transitive tournament.
fn tournament_order(
    n: usize,
    beats: impl Fn(Vertex, Vertex) -> bool,
) -> Result<Vec<Vertex>, OrientationError> {
    let mut score: Vec<(usize, Vertex)> = (0..n)
        .map(|u| ((0..n).filter(|&v| v != u && beats(u, v)).count(), u))
        .collect();
    score.sort_by(|a, b| b.cmp(a));
    let order: Vec<Vertex> = score.into_iter().map(|(_, u)| u).collect();
    for i in 0..n {
        for j in i + 1..n {
            if !beats(order[i], order[j]) || beats(order[j], order[i]) {
                return Err(OrientationError::TournamentNotTransitive);
            }
        }
    }
    Ok(order)
}

fn orient(l: &LabelledGraph) -> Result<Vec<Vertex>, OrientationError> {
    let n = l.n();
    if n <= 1 {
        return Ok((0..n).collect());
    }
    if !l.has_free_pairs() {
        return tournament_order(n, |u, v| l.dc(u, v));
    }
    let ic = implication_classes(l);
    if let Some(c) = ic.classes.iter().find(|c| c.is_self_inverse()) {
        let (a, b) = c.pairs[0];
        let chain = ic.chain((a, b), (b, a)).expect("same class");
        return Err(OrientationError::DeltaInvertiblePair(DeltaInvertiblePair {
            a,
            b,
            chain,
        }));
    }
    let module = ic
        .classes
        .iter()
        .map(span)
        .enumerate()
        .filter(|(_, s)| s.len() < n)
        .min_by_key(|(id, s)| (s.len(), *id))
        .map(|(_, s)| s);
    let Some(module) = module else {
        if ic.classes.len() != 2 {
            return Err(OrientationError::NotTwoClasses(ic.classes.len()));
        }
        let d = &ic.classes[0];
        return tournament_order(n, |u, v| l.dc(u, v) || d.contains((u, v)));
    };
    let mut inside = vec![false; n];
    for &s in &module {
        inside[s] = true;
    }
    for x in (0..n).filter(|&x| !inside[x]) {
        let first = module[0];
        let uniform = module
            .iter()
            .all(|&s| l.label(x, s) == l.label(x, first) && l.dc(x, s) == l.dc(x, first));
        if !uniform {
            return Err(OrientationError::NonUniformQuotientLabel { outside: x, module });
        }
    }
    let rep = module[0];
    let quotient: Vec<Vertex> = (0..n).filter(|&v| !inside[v] || v == rep).collect();
    let outer = orient(&l.induced(&quotient)).map_err(|e| e.relabel(&quotient))?;
    let inner = orient(&l.induced(&module)).map_err(|e| e.relabel(&module))?;
    let mut order = Vec::with_capacity(n);
    for v in outer.into_iter().map(|i| quotient[i]) {
        if v == rep {
            order.extend(inner.iter().map(|&i| module[i]));
        } else {
            order.push(v);
        }
    }
    Ok(order)
}

/// Whether `order` avoids the five forbidden patterns on triples
/// `a < b < c`.
pub fn verify_interval_ordering<L: EdgeLabels>(l: &L, order: &[Vertex]) -> bool {
    use Label::*;
    let n = l.vertex_count();
    let mut seen = vec![false; n];
    if order.len() != n
        || order
            .iter()
            .any(|&v| v >= n || std::mem::replace(&mut seen[v], true))
    {
        return false;
    }
    for i in 0..n {
        let a = order[i];
        for j in i + 1..n {
            let b = order[j];
            let ab = l.label(a, b);
            for &c in &order[j + 1..] {
                let ac = l.label(a, c);
                let bc = l.label(b, c);
                let bad = (ab == NonEdge && ac != NonEdge)
                    || (ab == Inclusion && ac == NonEdge && bc != NonEdge)
                    || (ab == Overlap && ac != NonEdge && bc == NonEdge)
                    || (ab == Overlap && bc == Overlap && ac == Inclusion)
                    || (ab == Inclusion && bc == Inclusion && ac == Overlap);
                if bad {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use Label::*;

    /// Labelled graph from an upper-triangle label list and `dc` pairs.
    pub(crate) fn lg(
        n: usize,
        upper: &[(Vertex, Vertex, Label)],
        dc: &[(Vertex, Vertex)],
    ) -> LabelledGraph {
        let mut labels = vec![NonEdge; n * n];
        for u in 0..n {
            labels[u * n + u] = Inclusion;
        }
        for &(u, v, l) in upper {
            labels[u * n + v] = l;
            labels[v * n + u] = l;
        }
        LabelledGraph::new(n, labels, dc).unwrap()
    }

    fn path3() -> LabelledGraph {
        lg(3, &[(0, 1, Overlap), (1, 2, Overlap)], &[])
    }

    #[test]
    fn delta_step_examples() {
        let l = path3();
        assert!(delta_step(&l, (0, 2), (1, 2)));
        for x in 0..3 {
            for z in 0..3 {
                assert_eq!(delta_step(&l, (x, z), (x, z)), l.label(x, z) != Inclusion);
            }
        }
        let tri = lg(3, &[(0, 1, Overlap), (1, 2, Overlap), (0, 2, Overlap)], &[]);
        assert!(!delta_step(&tri, (0, 2), (1, 2)));
    }

    #[test]
    fn classes_small() {
        let one = lg(2, &[(0, 1, Overlap)], &[]);
        let ic = implication_classes(&one);
        assert_eq!(ic.classes.len(), 2);
        assert_eq!(ic.classes[0].pairs, vec![(0, 1)]);
        assert_eq!(ic.classes[0].inverse_id, 1);

        let ic = implication_classes(&path3());
        assert_eq!(ic.classes.len(), 2);
        assert_eq!(ic.classes[0].pairs, vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(span(&ic.classes[0]), vec![0, 1, 2]);
        assert_eq!(span(&ic.classes[0]), span(&ic.classes[1]));

        let all_inc = lg(2, &[(0, 1, Inclusion)], &[(0, 1)]);
        assert!(implication_classes(&all_inc).classes.is_empty());
    }

    #[test]
    fn orientation_of_path() {
        let o = interval_orientation(&path3()).unwrap();
        assert_eq!(o.order, vec![0, 1, 2]);
        assert_eq!(o.oriented, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn orientation_of_inclusion_chain() {
        let l = lg(
            3,
            &[(0, 1, Inclusion), (1, 2, Inclusion), (0, 2, Inclusion)],
            &[(2, 1), (1, 0), (2, 0)],
        );
        let o = interval_orientation(&l).unwrap();
        assert_eq!(o.order, vec![2, 1, 0]);
        assert!(o.oriented.is_empty());
    }

    #[test]
    fn invertible_pair_detected() {
        // A 4-cycle of overlaps has no interval ordering.
        let l = lg(
            4,
            &[
                (0, 1, Overlap),
                (1, 2, Overlap),
                (2, 3, Overlap),
                (0, 3, Overlap),
            ],
            &[],
        );
        match interval_orientation(&l) {
            Err(OrientationError::DeltaInvertiblePair(p)) => {
                assert_eq!(p.chain[0], (p.a, p.b));
                assert_eq!(*p.chain.last().unwrap(), (p.b, p.a));
                for w in p.chain.windows(2) {
                    assert!(delta_step(&l, w[0], w[1]));
                }
            }
            other => panic!("expected an invertible pair, got {other:?}"),
        }
    }

    #[test]
    fn ordering_patterns() {
        let l = path3();
        assert!(verify_interval_ordering(&l, &[0, 1, 2]));
        assert!(verify_interval_ordering(&l, &[2, 1, 0]));
        assert!(!verify_interval_ordering(&l, &[1, 0, 2]));
        assert!(verify_interval_ordering(&lg(1, &[], &[]), &[0]));
        assert!(!verify_interval_ordering(&l, &[0, 0, 2]));
    }

    #[test]
    fn module_recursion_splices() {
        // intervals 0=[0,10] 1=[1,3] 2=[2,4] 3=[5,12]; {1, 2} is a module
        let l = lg(
            4,
            &[
                (0, 1, Inclusion),
                (0, 2, Inclusion),
                (1, 2, Overlap),
                (0, 3, Overlap),
            ],
            &[(0, 1), (0, 2)],
        );
        let ic = implication_classes(&l);
        let c = ic.class_of(1, 2).unwrap();
        assert_eq!(span(&ic.classes[c]), vec![1, 2]);
        let o = interval_orientation(&l).unwrap();
        assert_eq!(o.order, vec![0, 1, 2, 3]);
    }

    #[test]
    fn rejects_inconsistent_dc() {
        let mut labels = vec![Inclusion; 4];
        labels[1] = Overlap;
        labels[2] = Overlap;
        assert!(LabelledGraph::new(2, labels, &[]).is_ok());
        assert_eq!(
            LabelledGraph::new(2, vec![Inclusion; 4], &[]),
            Err(LabelError::Unoriented(0, 1))
        );
        assert_eq!(
            LabelledGraph::new(2, vec![Inclusion; 4], &[(0, 1), (1, 0)]),
            Err(LabelError::Unoriented(0, 1))
        );
    }
}
