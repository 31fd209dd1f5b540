//! Universal-vertex and true-twin reduction, and its inverse on arcs.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::arcs::ArcRepresentation;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionStep {
    RemoveUniversal { vertex: Vertex },
    MergeTwins { kept: Vertex, removed: Vertex },
}

impl ReductionStep {
    pub fn removed(&self) -> Vertex {
        match *self {
            ReductionStep::RemoveUniversal { vertex } => vertex,
            ReductionStep::MergeTwins { removed, .. } => removed,
        }
    }
}

/// Steps applied to a graph on `original_n` vertices, in order. Indices refer
/// to the original graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReductionTrace {
    pub original_n: usize,
    pub steps: Vec<ReductionStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("trace is for {expected} vertices, graph has {got}")]
    VertexCount { expected: usize, got: usize },
    #[error("step {step}: vertex {vertex} is out of range or already removed")]
    Missing { step: usize, vertex: Vertex },
    #[error("step {step}: vertex {vertex} is not universal")]
    NotUniversal { step: usize, vertex: Vertex },
    #[error("step {step}: {kept} and {removed} are not true twins")]
    NotTwins {
        step: usize,
        kept: Vertex,
        removed: Vertex,
    },
    #[error("representation has {got} arcs, reduced graph has {expected} vertices")]
    ArcCount { expected: usize, got: usize },
}

impl ReductionTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Original indices of the vertices that survive, ascending. The reduced
    /// graph's vertex `i` is `surviving()[i]`.
    pub fn surviving(&self) -> Vec<Vertex> {
        let mut alive = vec![true; self.original_n];
        for s in &self.steps {
            if let Some(a) = alive.get_mut(s.removed()) {
                *a = false;
            }
        }
        (0..self.original_n).filter(|&u| alive[u]).collect()
    }

    /// Replays the trace on `g`, checking every step against the current
    /// induced subgraph, and returns the reduced graph.
    pub fn replay(&self, g: &Graph) -> Result<Graph, ReplayError> {
        if g.n() != self.original_n {
            return Err(ReplayError::VertexCount {
                expected: self.original_n,
                got: g.n(),
            });
        }
        let mut alive = FixedBitSet::with_capacity(g.n());
        alive.insert_range(..);
        let mut scratch = FixedBitSet::with_capacity(g.n());
        for (step, s) in self.steps.iter().enumerate() {
            let present = |v: Vertex| v < g.n() && alive.contains(v);
            match *s {
                ReductionStep::RemoveUniversal { vertex } => {
                    if !present(vertex) {
                        return Err(ReplayError::Missing { step, vertex });
                    }
                    scratch.clone_from(&alive);
                    scratch.difference_with(g.closed_neighborhood(vertex));
                    if !scratch.is_clear() {
                        return Err(ReplayError::NotUniversal { step, vertex });
                    }
                    alive.set(vertex, false);
                }
                ReductionStep::MergeTwins { kept, removed } => {
                    for v in [kept, removed] {
                        if !present(v) {
                            return Err(ReplayError::Missing { step, vertex: v });
                        }
                    }
                    if kept == removed || !same_within(g, kept, removed, &alive) {
                        return Err(ReplayError::NotTwins {
                            step,
                            kept,
                            removed,
                        });
                    }
                    alive.set(removed, false);
                }
            }
        }
        Ok(g.induced(&alive.ones().collect::<Vec<_>>()))
    }
}

fn same_within(g: &Graph, u: Vertex, v: Vertex, alive: &FixedBitSet) -> bool {
    let a = g.closed_neighborhood(u).intersection(alive);
    let b = g.closed_neighborhood(v).intersection(alive);
    a.eq(b)
}

/// Removes universal vertices and true twins until neither remains. Graphs
/// on at most one vertex are left alone.
pub fn reduce(g: &Graph) -> (Graph, ReductionTrace) {
    let n = g.n();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut steps = Vec::new();
    let mut scratch = FixedBitSet::with_capacity(n);
    loop {
        if alive.count_ones(..) <= 1 {
            break;
        }
        let universal = alive.ones().find(|&u| {
            scratch.clone_from(&alive);
            scratch.difference_with(g.closed_neighborhood(u));
            scratch.is_clear()
        });
        if let Some(vertex) = universal {
            alive.set(vertex, false);
            steps.push(ReductionStep::RemoveUniversal { vertex });
            continue;
        }
        let live: Vec<Vertex> = alive.ones().collect();
        let rows: Vec<FixedBitSet> = live
            .iter()
            .map(|&u| {
                let mut r = g.closed_neighborhood(u).clone();
                r.intersect_with(&alive);
                r
            })
            .collect();
        let twin = (1..live.len()).find_map(|j| {
            (0..j)
                .find(|&i| rows[i] == rows[j])
                .map(|i| (live[i], live[j]))
        });
        match twin {
            Some((kept, removed)) => {
                alive.set(removed, false);
                steps.push(ReductionStep::MergeTwins { kept, removed });
            }
            None => break,
        }
    }
    let trace = ReductionTrace {
        original_n: n,
        steps,
    };
    (g.induced(&alive.ones().collect::<Vec<_>>()), trace)
}

/// Extends a representation of the reduced graph to the original graph by
/// undoing the trace from the last step backwards.
///
/// `arcs[i]` belongs to the reduced graph's vertex `i`. Every removal inserts
/// fresh slots, so endpoints stay distinct.
pub fn expand_arcs(
    trace: &ReductionTrace,
    arcs: &ArcRepresentation,
) -> Result<ArcRepresentation, ReplayError> {
    let surviving = trace.surviving();
    if surviving.len() != arcs.len() {
        return Err(ReplayError::ArcCount {
            expected: surviving.len(),
            got: arcs.len(),
        });
    }
    // Slots are identified by ids; `circle` lists ids in clockwise order.
    let mut circle: Vec<usize> = (0..arcs.circle_size).collect();
    let mut next_id = arcs.circle_size;
    let mut fresh = || {
        next_id += 1;
        next_id - 1
    };
    let mut ends: Vec<Option<(usize, usize)>> = vec![None; trace.original_n];
    for (i, &u) in surviving.iter().enumerate() {
        ends[u] = Some(arcs.arcs[i]);
    }
    for (step, s) in trace.steps.iter().enumerate().rev() {
        match *s {
            ReductionStep::RemoveUniversal { vertex } => {
                let (a, b, c) = (fresh(), fresh(), fresh());
                circle.insert(0, a);
                circle.push(b);
                circle.push(c);
                ends[vertex] = Some((a, b));
            }
            ReductionStep::MergeTwins { kept, removed } => {
                let (l, r) = ends
                    .get(kept)
                    .copied()
                    .flatten()
                    .ok_or(ReplayError::Missing { step, vertex: kept })?;
                let (nl, nr) = (fresh(), fresh());
                let pl = circle.iter().position(|&s| s == l).expect("live slot");
                circle.insert(pl, nl);
                let pr = circle.iter().position(|&s| s == r).expect("live slot");
                circle.insert(pr + 1, nr);
                ends[removed] = Some((nl, nr));
            }
        }
    }
    let mut position = vec![0; next_id];
    for (p, &id) in circle.iter().enumerate() {
        position[id] = p;
    }
    let out = ends
        .iter()
        .enumerate()
        .map(|(u, e)| {
            e.map(|(l, r)| (position[l], position[r]))
                .ok_or(ReplayError::Missing {
                    step: trace.steps.len(),
                    vertex: u,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ArcRepresentation::new(circle.len(), out))
}
