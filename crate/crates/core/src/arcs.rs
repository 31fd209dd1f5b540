//! Circular-arc representations on a discrete circle.
//!
//! The circle is the slot set `0..circle_size`. An arc `[l, r]` runs
//! clockwise from slot `l` to slot `r` inclusive and wraps when `l > r`. Two
//! arcs intersect iff they share a slot.

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcRepresentation {
    pub circle_size: usize,
    /// `arcs[u] = (l_u, r_u)`.
    pub arcs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("representation has {got} arcs, graph has {expected} vertices")]
    VertexCount { expected: usize, got: usize },
    #[error("endpoint {slot} of vertex {vertex} lies outside a circle of size {circle_size}")]
    OutOfRange {
        vertex: Vertex,
        slot: usize,
        circle_size: usize,
    },
    #[error("slot {slot} is used as an endpoint more than once")]
    SharedEndpoint { slot: usize },
    #[error("vertices {u} and {v}: arcs intersect={intersect}, adjacent={adjacent}")]
    Mismatch {
        u: Vertex,
        v: Vertex,
        intersect: bool,
        adjacent: bool,
    },
}

impl ArcRepresentation {
    pub fn new(circle_size: usize, arcs: Vec<(usize, usize)>) -> Self {
        ArcRepresentation { circle_size, arcs }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Whether the arc of `u` covers `slot`.
    pub fn covers(&self, u: Vertex, slot: usize) -> bool {
        let (l, r) = self.arcs[u];
        if l <= r {
            l <= slot && slot <= r
        } else {
            slot >= l || slot <= r
        }
    }

    /// Two circular arcs meet iff one contains the left endpoint of the other.
    pub fn intersect(&self, u: Vertex, v: Vertex) -> bool {
        self.covers(u, self.arcs[v].0) || self.covers(v, self.arcs[u].0)
    }

    /// Keeps the arcs of `vertices`, in that order.
    pub fn restrict(&self, vertices: &[Vertex]) -> ArcRepresentation {
        ArcRepresentation {
            circle_size: self.circle_size,
            arcs: vertices.iter().map(|&u| self.arcs[u]).collect(),
        }
    }
}

/// Checks that `arcs` realizes `g`: endpoints are distinct slots and arcs
/// meet exactly when the vertices are adjacent.
pub fn verify_representation(
    g: &Graph,
    arcs: &ArcRepresentation,
) -> Result<(), RepresentationError> {
    let n = g.n();
    if arcs.len() != n {
        return Err(RepresentationError::VertexCount {
            expected: n,
            got: arcs.len(),
        });
    }
    let mut used = vec![false; arcs.circle_size];
    for (u, &(l, r)) in arcs.arcs.iter().enumerate() {
        for slot in [l, r] {
            if slot >= arcs.circle_size {
                return Err(RepresentationError::OutOfRange {
                    vertex: u,
                    slot,
                    circle_size: arcs.circle_size,
                });
            }
            if used[slot] {
                return Err(RepresentationError::SharedEndpoint { slot });
            }
            used[slot] = true;
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            let intersect = arcs.intersect(u, v);
            let adjacent = g.adjacent(u, v);
            if intersect != adjacent {
                return Err(RepresentationError::Mismatch {
                    u,
                    v,
                    intersect,
                    adjacent,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::cycle;

    fn c4_arcs() -> ArcRepresentation {
        // v1=[17,7] v2=[4,12] v3=[8,16] v4=[13,3] on 24 slots
        ArcRepresentation::new(24, vec![(17, 7), (4, 12), (8, 16), (13, 3)])
    }

    #[test]
    fn c4_realized() {
        assert_eq!(verify_representation(&cycle(4), &c4_arcs()), Ok(()));
    }

    #[test]
    fn equal_arcs_rejected() {
        let reps = ArcRepresentation::new(24, vec![(4, 12); 4]);
        assert!(verify_representation(&cycle(4), &reps).is_err());
    }

    #[test]
    fn missing_non_adjacency_detected() {
        let reps = ArcRepresentation::new(8, vec![(0, 5), (1, 2), (3, 6), (4, 7)]);
        assert!(matches!(
            verify_representation(&cycle(4), &reps),
            Err(RepresentationError::Mismatch { .. })
        ));
    }

    #[test]
    fn single_arc() {
        let g = Graph::empty(1);
        assert_eq!(
            verify_representation(&g, &ArcRepresentation::new(4, vec![(0, 1)])),
            Ok(())
        );
    }

    #[test]
    fn wrapping_coverage() {
        let reps = c4_arcs();
        assert!(reps.covers(0, 0));
        assert!(reps.covers(0, 23));
        assert!(!reps.covers(0, 12));
        assert!(reps.intersect(0, 3));
        assert!(!reps.intersect(0, 2) || reps.covers(2, 17));
    }
}
