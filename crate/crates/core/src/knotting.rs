//! Anchored knotting graphs, odd-cycle extraction of anchored invertible
//! pairs, and the disagreement bipartition that selects the set Z.

use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::edge_types::{CircularPairing, EdgeLabels, EdgeType, Label, TypedGraph};
use crate::graph::Vertex;
use crate::pairwalk::{chain_walks, legal_state, PairSpace};

/// An anchored invertible pair: `walk_p` runs from `pair.0` to `pair.1`,
/// `walk_q` back, the walks avoid each other and both avoid `anchor`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AvoidWalkPair {
    pub anchor: Vertex,
    pub pair: (Vertex, Vertex),
    pub walk_p: Vec<Vertex>,
    pub walk_q: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkPairViolation {
    #[error("vertex {0} out of range")]
    OutOfRange(Vertex),
    #[error("anchor and pair vertices are not distinct")]
    NotDistinct,
    #[error("walks have lengths {0} and {1}")]
    Length(usize, usize),
    #[error("walk endpoints do not swap the pair")]
    Endpoints,
    #[error("step {0}: consecutive vertices are not adjacent")]
    IllegalStep(usize),
    #[error("step {0}: the walks do not avoid each other")]
    NotMutuallyAvoiding(usize),
    #[error("the anchor does not avoid walk {0}")]
    AnchorNotAvoided(char),
}

/// Checks an anchored invertible pair against the labels of `l` alone.
pub fn check_walk_pair<L: EdgeLabels>(l: &L, w: &AvoidWalkPair) -> Result<(), WalkPairViolation> {
    let n = l.vertex_count();
    let (u, v) = w.pair;
    if let Some(&x) = [w.anchor, u, v]
        .iter()
        .chain(&w.walk_p)
        .chain(&w.walk_q)
        .find(|&&x| x >= n)
    {
        return Err(WalkPairViolation::OutOfRange(x));
    }
    if u == v || u == w.anchor || v == w.anchor {
        return Err(WalkPairViolation::NotDistinct);
    }
    let (p, q) = (&w.walk_p, &w.walk_q);
    if p.len() != q.len() || p.is_empty() {
        return Err(WalkPairViolation::Length(p.len(), q.len()));
    }
    if p[0] != u || p[p.len() - 1] != v || q[0] != v || q[q.len() - 1] != u {
        return Err(WalkPairViolation::Endpoints);
    }
    for i in 0..p.len() - 1 {
        if !l.is_edge(p[i], p[i + 1]) || !l.is_edge(q[i], q[i + 1]) {
            return Err(WalkPairViolation::IllegalStep(i));
        }
        if !(l.avoids_edge(p[i], q[i], q[i + 1]) && l.avoids_edge(q[i + 1], p[i], p[i + 1])) {
            return Err(WalkPairViolation::NotMutuallyAvoiding(i));
        }
    }
    if !l.avoids_walk(w.anchor, p) {
        return Err(WalkPairViolation::AnchorNotAvoided('P'));
    }
    if !l.avoids_walk(w.anchor, q) {
        return Err(WalkPairViolation::AnchorNotAvoided('Q'));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnottingError {
    #[error("anchor {0} has no circular partner")]
    NoPartner(Vertex),
    #[error("odd cycle of length {0} in the knotting graph is too short")]
    ShortCycle(usize),
    #[error("no path from {from} to {to} inside a component of {via}")]
    MissingPath {
        via: Vertex,
        from: Vertex,
        to: Vertex,
    },
    #[error("no chain between states that share a component")]
    MissingChain,
    #[error("{0} overlaps the anchor by a 2-overlap edge")]
    TwoOverlapAtAnchor(Vertex),
    #[error("neither or both of {0} and its partner lie in Z")]
    NotTransversal(Vertex),
    #[error("{0} and {1} form a 2-overlap edge inside Z")]
    TwoOverlapInZ(Vertex, Vertex),
    #[error("constructed walks fail verification: {0}")]
    Verification(#[from] WalkPairViolation),
}

/// Either a proper 2-coloring (color per vertex) or an odd closed walk
/// `c_0, c_1, ..., c_{k-1}` whose consecutive entries, and `c_{k-1}, c_0`,
/// are adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoColoring {
    Colors(Vec<bool>),
    OddCycle(Vec<usize>),
}

/// BFS 2-coloring, roots taken in ascending order and colored `false`.
pub fn two_color(adj: &[Vec<usize>]) -> TwoColoring {
    let n = adj.len();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!color[u].unwrap());
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(c) if c == color[u].unwrap() => {
                        return TwoColoring::OddCycle(tree_cycle(&parent, &depth, u, v));
                    }
                    _ => {}
                }
            }
        }
    }
    TwoColoring::Colors(color.into_iter().map(|c| c.unwrap()).collect())
}

/// The cycle closed by the non-tree edge `uv`: `u` up to the common
/// ancestor, then down to `v`.
fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut up = Vec::new();
    let mut down = Vec::new();
    while depth[a] > depth[b] {
        up.push(a);
        a = parent[a];
    }
    while depth[b] > depth[a] {
        down.push(b);
        b = parent[b];
    }
    while a != b {
        up.push(a);
        down.push(b);
        a = parent[a];
        b = parent[b];
    }
    up.push(a);
    up.extend(down.into_iter().rev());
    up
}

/// A(z): vertices other than `z` that are non-adjacent to or overlap `z`.
pub fn non_inclusion_set<L: EdgeLabels>(l: &L, z: Vertex) -> Vec<Vertex> {
    (0..l.vertex_count())
        .filter(|&x| l.label(z, x) != Label::Inclusion)
        .collect()
}

/// Adjacency of the graph used for uz-components: vertices in
/// A(u) ∩ A(z), minus every overlap edge `xy` with `u` or `z` overlapping
/// both ends. Non-members get empty lists.
fn pruned_adjacency<L: EdgeLabels>(l: &L, u: Vertex, z: Vertex) -> (Vec<bool>, Vec<Vec<Vertex>>) {
    let n = l.vertex_count();
    let inside: Vec<bool> = (0..n)
        .map(|x| l.label(u, x) != Label::Inclusion && l.label(z, x) != Label::Inclusion)
        .collect();
    let ov = |a: Vertex, b: Vertex| l.label(a, b) == Label::Overlap;
    let mut adj = vec![Vec::new(); n];
    for x in (0..n).filter(|&x| inside[x]) {
        for y in (0..n).filter(|&y| y != x && inside[y] && l.is_edge(x, y)) {
            let cut = ov(x, y) && ((ov(u, x) && ov(u, y)) || (ov(z, x) && ov(z, y)));
            if !cut {
                adj[x].push(y);
            }
        }
    }
    (inside, adj)
}

/// The z-anchored knotting graph. Copy `k` is `copies[k] = (u, i)`, the copy
/// of `u` for its `i`-th uz-component (0-based, numbered by smallest member).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnottingGraph {
    pub anchor: Vertex,
    /// A(z), ascending.
    pub members: Vec<Vertex>,
    pub copies: Vec<(Vertex, usize)>,
    /// `components[u]` lists the uz-components of `u`; empty for `u ∉ A(z)`.
    pub components: Vec<Vec<Vec<Vertex>>>,
    /// Copy pairs `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    n: usize,
    first_copy: Vec<usize>,
    gamma: Vec<usize>,
}

impl KnottingGraph {
    /// γ(u, v): the index of the uz-component containing `v`.
    pub fn gamma(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let g = self.gamma[u * self.n + v];
        (g != usize::MAX).then_some(g)
    }

    pub fn copy_id(&self, u: Vertex, i: usize) -> Option<usize> {
        let first = *self.first_copy.get(u)?;
        (first != usize::MAX && i < self.components[u].len()).then_some(first + i)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.copies.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// Builds the z-anchored knotting graph of `h`: one copy of each `u ∈ A(z)`
/// per uz-component, and for every pair `u ≠ v` in A(z) whose label is not
/// inclusion an edge between `u_{γ(u,v)}` and `v_{γ(v,u)}`.
pub fn build_knotting<L: EdgeLabels + Sync>(h: &L, z: Vertex) -> KnottingGraph {
    let n = h.vertex_count();
    let members = non_inclusion_set(h, z);
    let per_member: Vec<(Vec<Vec<Vertex>>, Vec<usize>)> = members
        .par_iter()
        .map(|&u| {
            let (inside, adj) = pruned_adjacency(h, u, z);
            let mut comp = vec![usize::MAX; n];
            let mut comps: Vec<Vec<Vertex>> = Vec::new();
            for s in (0..n).filter(|&s| inside[s]) {
                if comp[s] != usize::MAX {
                    continue;
                }
                let id = comps.len();
                comp[s] = id;
                let mut list = vec![s];
                let mut k = 0;
                while k < list.len() {
                    let x = list[k];
                    k += 1;
                    for &y in &adj[x] {
                        if comp[y] == usize::MAX {
                            comp[y] = id;
                            list.push(y);
                        }
                    }
                }
                list.sort_unstable();
                comps.push(list);
            }
            (comps, comp)
        })
        .collect();
    let mut components = vec![Vec::new(); n];
    let mut gamma = vec![usize::MAX; n * n];
    let mut first_copy = vec![usize::MAX; n];
    let mut copies = Vec::new();
    for (&u, (comps, comp)) in members.iter().zip(per_member) {
        first_copy[u] = copies.len();
        copies.extend((0..comps.len()).map(|i| (u, i)));
        gamma[u * n..(u + 1) * n].copy_from_slice(&comp);
        components[u] = comps;
    }
    let mut edges = Vec::new();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if h.label(u, v) == Label::Inclusion {
                continue;
            }
            let a = first_copy[u] + gamma[u * n + v];
            let b = first_copy[v] + gamma[v * n + u];
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    KnottingGraph {
        anchor: z,
        members,
        copies,
        components,
        edges,
        n,
        first_copy,
        gamma,
    }
}

pub fn bipartite_or_odd_cycle(k: &KnottingGraph) -> TwoColoring {
    two_color(&k.adjacency())
}

/// Shortest path from `from` to `to` in the pruned graph of `via`.
fn component_path<L: EdgeLabels>(
    h: &L,
    z: Vertex,
    via: Vertex,
    from: Vertex,
    to: Vertex,
) -> Option<Vec<Vertex>> {
    let n = h.vertex_count();
    let (inside, adj) = pruned_adjacency(h, via, z);
    if !inside[from] || !inside[to] {
        return None;
    }
    let mut parent = vec![usize::MAX; n];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut c = to;
            while c != from {
                c = parent[c];
                path.push(c);
            }
            path.reverse();
            return Some(path);
        }
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Turns an odd cycle of copies into an anchored invertible pair
/// `{u_1, u_k}`: the two walks take turns, one moving along a path between
/// the neighbors of the other's current vertex inside that vertex's
/// component while the other stays put.
pub fn extract_invertible_pair<L: EdgeLabels>(
    h: &L,
    k: &KnottingGraph,
    cycle: &[usize],
) -> Result<AvoidWalkPair, KnottingError> {
    let len = cycle.len();
    if len < 3 || len.is_multiple_of(2) {
        return Err(KnottingError::ShortCycle(len));
    }
    let z = k.anchor;
    let u: Vec<Vertex> = cycle.iter().map(|&c| k.copies[c].0).collect();
    let mut states = vec![(u[0], u[len - 1])];
    for j in 0..len {
        let prev = u[(j + len - 1) % len];
        let next = u[(j + 1) % len];
        let path = component_path(h, z, u[j], prev, next).ok_or(KnottingError::MissingPath {
            via: u[j],
            from: prev,
            to: next,
        })?;
        for &x in &path[1..] {
            states.push(if j % 2 == 0 { (u[j], x) } else { (x, u[j]) });
        }
    }
    let (walk_p, walk_q) = chain_walks(&states);
    let w = AvoidWalkPair {
        anchor: z,
        pair: (u[0], u[len - 1]),
        walk_p,
        walk_q,
    };
    check_walk_pair(h, &w)?;
    Ok(w)
}

/// Searches the anchored pair space directly for any z-invertible pair.
pub fn find_anchored_invertible_pair<L: EdgeLabels>(h: &L, z: Vertex) -> Option<AvoidWalkPair> {
    let n = h.vertex_count();
    let space = PairSpace::build(h, Some(z));
    for a in 0..n {
        for b in a + 1..n {
            if !legal_state(h, Some(z), a, b) {
                continue;
            }
            if space.component(a, b) == space.component(b, a) {
                let chain = space.chain((a, b), (b, a))?;
                let (walk_p, walk_q) = chain_walks(&chain);
                return Some(AvoidWalkPair {
                    anchor: z,
                    pair: (a, b),
                    walk_p,
                    walk_q,
                });
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Disagreement {
    /// Y: one side of the disagreement graph on the vertices overlapping z.
    Bipartition(Vec<Vertex>),
    Obstruction(AvoidWalkPair),
}

/// Two vertices `x, y` overlapping `z` disagree when an `x z̄`-walk and a
/// `z̄ y`-walk avoid each other and both avoid `z`. Returns one side of a
/// 2-coloring of the disagreement graph, or the anchored invertible pair
/// `{x, z̄}` assembled from an odd cycle.
pub fn disagreement_partition(
    h: &TypedGraph,
    pairing: &CircularPairing,
    z: Vertex,
) -> Result<Disagreement, KnottingError> {
    let zb = pairing.partner(z).ok_or(KnottingError::NoPartner(z))?;
    let x: Vec<Vertex> = (0..h.n()).filter(|&v| h.overlaps(z, v)).collect();
    if let Some(&v) = x.iter().find(|&&v| h.type_of(z, v) == EdgeType::Overlap2) {
        return Err(KnottingError::TwoOverlapAtAnchor(v));
    }
    let space = PairSpace::build(h, Some(z));
    let disagree = |a: Vertex, b: Vertex| {
        let c = space.component(a, zb);
        c.is_some() && c == space.component(zb, b)
    };
    let adj: Vec<Vec<usize>> = (0..x.len())
        .map(|i| (0..x.len()).filter(|&j| disagree(x[i], x[j])).collect())
        .collect();
    let cycle = match two_color(&adj) {
        TwoColoring::Colors(c) => {
            return Ok(Disagreement::Bipartition(
                x.iter()
                    .zip(c)
                    .filter(|(_, c)| !c)
                    .map(|(&v, _)| v)
                    .collect(),
            ))
        }
        TwoColoring::OddCycle(c) => c,
    };
    let k = cycle.len();
    let mut states: Vec<(Vertex, Vertex)> = Vec::new();
    for i in 0..k {
        let (a, b) = (x[cycle[i]], x[cycle[(i + 1) % k]]);
        let chain = space
            .chain((a, zb), (zb, b))
            .ok_or(KnottingError::MissingChain)?;
        let seg: Vec<(Vertex, Vertex)> = if i % 2 == 0 {
            chain
        } else {
            chain.into_iter().map(|(p, q)| (q, p)).collect()
        };
        let skip = usize::from(!states.is_empty());
        states.extend_from_slice(&seg[skip..]);
    }
    let (walk_p, walk_q) = chain_walks(&states);
    let w = AvoidWalkPair {
        anchor: z,
        pair: (x[cycle[0]], zb),
        walk_p,
        walk_q,
    };
    check_walk_pair(h, &w)?;
    Ok(Disagreement::Obstruction(w))
}

/// Z = (V ∖ N[z]) ∪ Y, checked to hold exactly one vertex of every circular
/// pair and no 2-overlap edge.
pub fn build_z(
    h: &TypedGraph,
    pairing: &CircularPairing,
    z: Vertex,
    y: &[Vertex],
) -> Result<Vec<Vertex>, KnottingError> {
    let n = h.n();
    let mut inside: Vec<bool> = (0..n).map(|v| !h.graph().adjacent(z, v)).collect();
    for &v in y {
        inside[v] = true;
    }
    for u in 0..n {
        let bar = pairing.partner(u).ok_or(KnottingError::NotTransversal(u))?;
        if inside[u] == inside[bar] {
            return Err(KnottingError::NotTransversal(u));
        }
    }
    let zset: Vec<Vertex> = (0..n).filter(|&v| inside[v]).collect();
    for (i, &a) in zset.iter().enumerate() {
        for &b in &zset[i + 1..] {
            if h.type_of(a, b) == EdgeType::Overlap2 {
                return Err(KnottingError::TwoOverlapInZ(a, b));
            }
        }
    }
    Ok(zset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge_types::{classify_all, complete, Completion};
    use crate::fixtures::{biclaw, biclaw_minus_c, cycle};

    fn completion(g: &crate::graph::Graph) -> Completion {
        complete(&classify_all(g).unwrap()).unwrap()
    }

    #[test]
    fn two_color_cases() {
        assert_eq!(
            two_color(&[vec![], vec![]]),
            TwoColoring::Colors(vec![false, false])
        );
        let tri = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        match two_color(&tri) {
            TwoColoring::OddCycle(c) => assert_eq!(c.len(), 3),
            other => panic!("{other:?}"),
        }
        assert_eq!(two_color(&[vec![0]]), TwoColoring::OddCycle(vec![0]));
    }

    #[test]
    fn forced_anchor_f() {
        let c = completion(&biclaw());
        let f = c.graph().index_of("f").unwrap();
        let k = build_knotting(&c.typed, f);
        let TwoColoring::OddCycle(cycle) = bipartite_or_odd_cycle(&k) else {
            panic!("biclaw knotting graph at f should not be bipartite");
        };
        let w = extract_invertible_pair(&c.typed, &k, &cycle).unwrap();
        assert_eq!(w.anchor, f);

        let c = completion(&biclaw_minus_c());
        let f = c.graph().index_of("f").unwrap();
        let k = build_knotting(&c.typed, f);
        assert!(matches!(bipartite_or_odd_cycle(&k), TwoColoring::Colors(_)));
    }

    #[test]
    fn c4_anchor_v1() {
        let c = completion(&cycle(4));
        let k = build_knotting(&c.typed, 0);
        assert_eq!(k.members, vec![1, 2, 3]);
        assert!(matches!(bipartite_or_odd_cycle(&k), TwoColoring::Colors(_)));
        for &u in &k.members {
            for comp in &k.components[u] {
                for &v in comp {
                    assert_eq!(k.components[u][k.gamma(u, v).unwrap()], *comp);
                }
            }
        }
    }

    #[test]
    fn c4_disagreement_and_z() {
        let c = completion(&cycle(4));
        let Disagreement::Bipartition(y) = disagreement_partition(&c.typed, &c.pairing, 0).unwrap()
        else {
            panic!("C4 has no obstruction");
        };
        assert_eq!(y, vec![1]);
        assert_eq!(build_z(&c.typed, &c.pairing, 0, &y).unwrap(), vec![1, 2]);
    }

    #[test]
    fn path_z_contains_far_end() {
        let c = completion(&crate::fixtures::path(4));
        let Disagreement::Bipartition(y) = disagreement_partition(&c.typed, &c.pairing, 0).unwrap()
        else {
            panic!("P4 has no obstruction");
        };
        assert!(y.iter().all(|&v| v == 1));
        let z = build_z(&c.typed, &c.pairing, 0, &y).unwrap();
        assert!(z.contains(&2) && z.contains(&3));
    }

    #[test]
    fn disagreement_with_no_overlaps() {
        // 2K2: both vertices of the reduced graph are isolated
        let c = completion(&crate::graph::Graph::empty(2));
        assert_eq!(
            disagreement_partition(&c.typed, &c.pairing, 0).unwrap(),
            Disagreement::Bipartition(vec![])
        );
    }

    #[test]
    fn tampered_walk_rejected() {
        let c = completion(&biclaw());
        let f = c.graph().index_of("f").unwrap();
        let k = build_knotting(&c.typed, f);
        let TwoColoring::OddCycle(cycle) = bipartite_or_odd_cycle(&k) else {
            unreachable!()
        };
        let mut w = extract_invertible_pair(&c.typed, &k, &cycle).unwrap();
        let mid = w.walk_p.len() / 2;
        w.walk_p[mid] = f;
        assert!(check_walk_pair(&c.typed, &w).is_err());
    }
}
