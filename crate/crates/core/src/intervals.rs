//! Interval representations from interval orderings, and their lift to a
//! circle.

use thiserror::Error;

use crate::arcs::{verify_representation, ArcRepresentation, RepresentationError};
use crate::delta::LabelledGraph;
use crate::edge_types::{CircularPairing, EdgeLabels, Label, TypedGraph};
use crate::graph::Vertex;

/// `ends[u] = (l_u, r_u)`, all `2n` values distinct, taken from `1..=2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRepresentation {
    pub ends: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("order is not a permutation of the vertices")]
    BadOrder,
    #[error("intervals of {0} and {1} disagree with their label")]
    Inconsistent(Vertex, Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    L(Vertex),
    R(Vertex),
}

/// Builds an interval representation whose left endpoints appear in
/// `order`, inserting vertices from the right end of the order: each new
/// leftmost interval `x` ends right after the later of `l_y` (its last
/// neighbor in the order) and the right ends of its inclusion neighbors.
pub fn build_intervals(
    l: &LabelledGraph,
    order: &[Vertex],
) -> Result<IntervalRepresentation, IntervalError> {
    let n = l.n();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(IntervalError::BadOrder);
        }
        pos[v] = i;
    }
    if order.len() != n {
        return Err(IntervalError::BadOrder);
    }
    let mut slots: Vec<Token> = Vec::with_capacity(2 * n);
    for (i, &x) in order.iter().enumerate().rev() {
        slots.insert(0, Token::L(x));
        let y = order[i..]
            .iter()
            .rev()
            .find(|&&y| l.is_edge(x, y))
            .copied()
            .unwrap_or(x);
        let mut t = slots
            .iter()
            .position(|&s| s == Token::L(y))
            .expect("placed");
        for (p, s) in slots.iter().enumerate() {
            if let Token::R(z) = *s {
                if z != x && l.label(x, z) == Label::Inclusion {
                    t = t.max(p);
                }
            }
        }
        slots.insert(t + 1, Token::R(x));
    }
    let mut ends = vec![(0, 0); n];
    for (p, s) in slots.iter().enumerate() {
        match *s {
            Token::L(v) => ends[v].0 = p + 1,
            Token::R(v) => ends[v].1 = p + 1,
        }
    }
    let rep = IntervalRepresentation { ends };
    check_consistent(l, &rep)?;
    Ok(rep)
}

/// Overlap labels must be properly crossing intervals, non-edges disjoint
/// intervals, and inclusion pairs nested in the direction of `dc`.
pub fn check_consistent(
    l: &LabelledGraph,
    rep: &IntervalRepresentation,
) -> Result<(), IntervalError> {
    let n = l.n();
    for u in 0..n {
        for v in u + 1..n {
            let (lu, ru) = rep.ends[u];
            let (lv, rv) = rep.ends[v];
            let disjoint = ru < lv || rv < lu;
            let u_in_v = lv < lu && ru < rv;
            let v_in_u = lu < lv && rv < ru;
            let ok = match l.label(u, v) {
                Label::NonEdge => disjoint,
                Label::Overlap => !disjoint && !u_in_v && !v_in_u,
                Label::Inclusion => (l.dc(u, v) && v_in_u) || (l.dc(v, u) && u_in_v),
            };
            if !ok {
                return Err(IntervalError::Inconsistent(u, v));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("vertex {0} is neither in Z nor the partner of exactly one vertex of Z")]
    NotTransversal(Vertex),
    #[error("{0} intervals for {1} vertices of Z")]
    Count(usize, usize),
    #[error("lifted arcs do not realize the completion: {0}")]
    Representation(#[from] RepresentationError),
}

/// Places the intervals of `z` (indexed like `z`) on a circle of `8|Z| + 8`
/// slots, scaled by 4, and gives every partner `ū` the complement of `u`'s
/// arc shrunk by one slot at each end. The result is indexed by `h`'s
/// vertices and checked against `h`.
pub fn lift_to_circle(
    ivals: &IntervalRepresentation,
    z: &[Vertex],
    pairing: &CircularPairing,
    h: &TypedGraph,
) -> Result<ArcRepresentation, LiftError> {
    if ivals.ends.len() != z.len() {
        return Err(LiftError::Count(ivals.ends.len(), z.len()));
    }
    let n = h.n();
    let mut arcs: Vec<Option<(usize, usize)>> = vec![None; n];
    for (i, &u) in z.iter().enumerate() {
        let (l, r) = ivals.ends[i];
        if u >= n || arcs[u].is_some() {
            return Err(LiftError::NotTransversal(u));
        }
        arcs[u] = Some((4 * l, 4 * r));
    }
    for (i, &u) in z.iter().enumerate() {
        let (l, r) = ivals.ends[i];
        let bar = pairing.partner(u).ok_or(LiftError::NotTransversal(u))?;
        if arcs[bar].is_some() {
            return Err(LiftError::NotTransversal(bar));
        }
        arcs[bar] = Some((4 * r + 1, 4 * l - 1));
    }
    let arcs = arcs
        .into_iter()
        .enumerate()
        .map(|(u, a)| a.ok_or(LiftError::NotTransversal(u)))
        .collect::<Result<Vec<_>, _>>()?;
    let rep = ArcRepresentation::new(8 * z.len() + 8, arcs);
    verify_representation(h.graph(), &rep)?;
    Ok(rep)
}
