//! Breadth-first search over ordered vertex pairs.
//!
//! A state `(a, b)` stands for the current ends of two walks. One step moves
//! one coordinate along an edge that the other coordinate avoids (and the
//! anchor too, when one is set). The step relation is symmetric, so its
//! connected components are exactly the classes of related pairs. Parent
//! pointers of the BFS forest turn any two states of one component into a
//! step-by-step chain.

use std::collections::VecDeque;

use crate::edge_types::{EdgeLabels, Label};
use crate::graph::Vertex;

const NONE: u32 = u32::MAX;

pub(crate) struct PairSpace {
    n: usize,
    comp: Vec<u32>,
    parent: Vec<u32>,
    depth: Vec<u32>,
}

/// Whether `(a, b)` can be a state at all.
pub(crate) fn legal_state<L: EdgeLabels>(
    l: &L,
    anchor: Option<Vertex>,
    a: Vertex,
    b: Vertex,
) -> bool {
    a != b
        && l.label(a, b) != Label::Inclusion
        && anchor
            .is_none_or(|z| l.label(z, a) != Label::Inclusion && l.label(z, b) != Label::Inclusion)
}

impl PairSpace {
    pub(crate) fn build<L: EdgeLabels>(l: &L, anchor: Option<Vertex>) -> Self {
        let n = l.vertex_count();
        let nbrs: Vec<Vec<Vertex>> = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && l.is_edge(u, v)).collect())
            .collect();
        let anchor_ok = |x: Vertex, y: Vertex| anchor.is_none_or(|z| l.avoids_edge(z, x, y));
        let mut comp = vec![NONE; n * n];
        let mut parent = vec![NONE; n * n];
        let mut depth = vec![0u32; n * n];
        let mut components = 0u32;
        let mut queue = VecDeque::new();
        for a in 0..n {
            for b in 0..n {
                let s = a * n + b;
                if comp[s] != NONE || !legal_state(l, anchor, a, b) {
                    continue;
                }
                comp[s] = components;
                parent[s] = s as u32;
                queue.push_back(s);
                while let Some(s) = queue.pop_front() {
                    let (a, b) = (s / n, s % n);
                    let mut visit = |t: usize| {
                        if comp[t] == NONE {
                            comp[t] = components;
                            parent[t] = s as u32;
                            depth[t] = depth[s] + 1;
                            queue.push_back(t);
                        }
                    };
                    for &a2 in &nbrs[a] {
                        if l.avoids_edge(b, a, a2) && anchor_ok(a, a2) {
                            visit(a2 * n + b);
                        }
                    }
                    for &b2 in &nbrs[b] {
                        if l.avoids_edge(a, b, b2) && anchor_ok(b, b2) {
                            visit(a * n + b2);
                        }
                    }
                }
                components += 1;
            }
        }
        PairSpace {
            n,
            comp,
            parent,
            depth,
        }
    }

    /// Component of `(a, b)`, numbered in order of each component's
    /// lexicographically least state.
    pub(crate) fn component(&self, a: Vertex, b: Vertex) -> Option<usize> {
        let c = self.comp[a * self.n + b];
        (c != NONE).then_some(c as usize)
    }

    /// States of every component, each list in lexicographic order.
    pub(crate) fn members(&self) -> Vec<Vec<(Vertex, Vertex)>> {
        let count = self
            .comp
            .iter()
            .filter(|&&c| c != NONE)
            .map(|&c| c as usize + 1)
            .max()
            .unwrap_or(0);
        let mut out = vec![Vec::new(); count];
        for (s, &c) in self.comp.iter().enumerate() {
            if c != NONE {
                out[c as usize].push((s / self.n, s % self.n));
            }
        }
        out
    }

    /// A chain of single steps from `from` to `to`, both ends included.
    pub(crate) fn chain(
        &self,
        from: (Vertex, Vertex),
        to: (Vertex, Vertex),
    ) -> Option<Vec<(Vertex, Vertex)>> {
        let n = self.n;
        let mut s = from.0 * n + from.1;
        let mut t = to.0 * n + to.1;
        if self.comp[s] == NONE || self.comp[s] != self.comp[t] {
            return None;
        }
        let mut head = Vec::new();
        let mut tail = Vec::new();
        while self.depth[s] > self.depth[t] {
            head.push(s);
            s = self.parent[s] as usize;
        }
        while self.depth[t] > self.depth[s] {
            tail.push(t);
            t = self.parent[t] as usize;
        }
        while s != t {
            head.push(s);
            tail.push(t);
            s = self.parent[s] as usize;
            t = self.parent[t] as usize;
        }
        head.push(s);
        head.extend(tail.into_iter().rev());
        Some(head.into_iter().map(|s| (s / n, s % n)).collect())
    }
}

/// Splits a state chain into its two walks.
pub(crate) fn chain_walks(chain: &[(Vertex, Vertex)]) -> (Vec<Vertex>, Vec<Vertex>) {
    chain.iter().copied().unzip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge_types::classify_all;
    use crate::fixtures::cycle;

    #[test]
    fn chains_are_single_steps() {
        let t = classify_all(&cycle(5)).unwrap();
        let space = PairSpace::build(&t, None);
        let members = space.members();
        for class in &members {
            let first = class[0];
            for &other in class {
                let chain = space.chain(first, other).unwrap();
                assert_eq!(chain[0], first);
                assert_eq!(*chain.last().unwrap(), other);
                for w in chain.windows(2) {
                    let ((a, b), (c, d)) = (w[0], w[1]);
                    assert!((a == c) ^ (b == d));
                }
                let (p, q) = chain_walks(&chain);
                assert!(t.is_walk(&p) && t.is_walk(&q));
                assert!(t.walks_avoid(&p, &q));
            }
        }
    }

    #[test]
    fn anchor_excluded() {
        let t = classify_all(&cycle(4)).unwrap();
        let space = PairSpace::build(&t, Some(0));
        for a in 0..4 {
            assert_eq!(space.component(0, a), None);
            assert_eq!(space.component(a, 0), None);
        }
    }
}
