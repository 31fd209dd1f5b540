//! The certifying recognizer and the checkers for both certificate kinds.

use thiserror::Error;

use crate::arcs::{verify_representation, ArcRepresentation, RepresentationError};
use crate::delta::{interval_orientation, LabelledGraph, OrientationError};
use crate::edge_types::{
    classify_all, complete, verify_completion, CircularPairing, ClassifyError, Completion,
    CompletionError, CompletionViolation, PairingError,
};
use crate::graph::{Graph, Vertex};
use crate::intervals::{build_intervals, lift_to_circle, IntervalError, LiftError};
use crate::knotting::{
    bipartite_or_odd_cycle, build_knotting, build_z, check_walk_pair, disagreement_partition,
    extract_invertible_pair, find_anchored_invertible_pair, AvoidWalkPair, Disagreement,
    KnottingError, TwoColoring, WalkPairViolation,
};
use crate::reduce::{expand_arcs, reduce, ReductionTrace, ReplayError};

/// Evidence that a graph is not a circular-arc graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeCertificate {
    pub reduction: ReductionTrace,
    /// Completion of the reduced graph, which occupies its first vertices.
    pub completion: Graph,
    /// `partner[u]` is the circular partner of completion vertex `u`.
    pub partner: Vec<Vertex>,
    pub obstruction: AvoidWalkPair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    CircularArc(ArcRepresentation),
    NotCircularArc(NegativeCertificate),
}

impl Certificate {
    pub fn is_circular_arc(&self) -> bool {
        matches!(self, Certificate::CircularArc(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate has the other verdict")]
    WrongVerdict,
    #[error("arcs: {0}")]
    Representation(#[from] RepresentationError),
    #[error("reduction replay: {0}")]
    Replay(#[from] ReplayError),
    #[error("reduced graph still reducible: {0}")]
    ReducedNotPrime(ClassifyError),
    #[error("partner list has {got} entries for {expected} completion vertices")]
    PartnerCount { expected: usize, got: usize },
    #[error("pairing: {0}")]
    Pairing(#[from] PairingError),
    #[error("completion: {0}")]
    Completion(#[from] CompletionViolation),
    #[error("walks: {0}")]
    Walks(#[from] WalkPairViolation),
}

/// Checks a positive certificate using only `g` and the arcs.
pub fn verify_positive(g: &Graph, cert: &Certificate) -> Result<(), CertificateError> {
    match cert {
        Certificate::CircularArc(arcs) => Ok(verify_representation(g, arcs)?),
        Certificate::NotCircularArc(_) => Err(CertificateError::WrongVerdict),
    }
}

/// Checks a negative certificate from adjacency alone: the trace replays on
/// `g` to a graph with no universal vertex or twins, the embedded graph is
/// its circular completion under the stated pairing, and the walks form an
/// anchored invertible pair in it.
pub fn verify_negative(g: &Graph, cert: &Certificate) -> Result<(), CertificateError> {
    let Certificate::NotCircularArc(neg) = cert else {
        return Err(CertificateError::WrongVerdict);
    };
    let reduced = neg.reduction.replay(g)?;
    let base = classify_all(&reduced).map_err(CertificateError::ReducedNotPrime)?;
    let n = neg.completion.n();
    if neg.partner.len() != n {
        return Err(CertificateError::PartnerCount {
            expected: n,
            got: neg.partner.len(),
        });
    }
    let h = classify_all(&neg.completion).map_err(CompletionViolation::Reducible)?;
    let pairs: Vec<(Vertex, Vertex)> = neg
        .partner
        .iter()
        .enumerate()
        .map(|(u, &v)| (u, v))
        .collect();
    let pairing = CircularPairing::from_pairs(n, &pairs)?;
    verify_completion(&base, &h, &pairing)?;
    check_walk_pair(&h, &neg.obstruction)?;
    Ok(())
}

pub fn verify(g: &Graph, cert: &Certificate) -> Result<(), CertificateError> {
    match cert {
        Certificate::CircularArc(_) => verify_positive(g, cert),
        Certificate::NotCircularArc(_) => verify_negative(g, cert),
    }
}

/// A pipeline postcondition failed. None of these is a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("reduced graph: {0}")]
    Classify(#[from] ClassifyError),
    #[error("completion: {0}")]
    Completion(#[from] CompletionError),
    #[error("knotting: {0}")]
    Knotting(#[from] KnottingError),
    #[error("orientation: {0}")]
    Orientation(#[from] OrientationError),
    #[error("intervals: {0}")]
    Intervals(#[from] IntervalError),
    #[error("lift: {0}")]
    Lift(#[from] LiftError),
    #[error("expansion: {0}")]
    Replay(#[from] ReplayError),
    #[error("emitted certificate fails its check: {0}")]
    SelfCheck(#[from] CertificateError),
}

/// Minimum closed degree, smallest index on ties.
pub fn min_degree_anchor(h: &Graph) -> Option<Vertex> {
    (0..h.n()).min_by_key(|&u| (h.closed_degree(u), u))
}

/// Reduces `g` and completes the reduced graph.
pub fn reduced_completion(g: &Graph) -> Result<(ReductionTrace, Completion), RecognizeError> {
    let (reduced, trace) = reduce(g);
    let typed = classify_all(&reduced)?;
    Ok((trace, complete(&typed)?))
}

/// Decides whether `g` is a circular-arc graph and returns a checked
/// certificate either way.
pub fn recognize(g: &Graph) -> Result<Certificate, RecognizeError> {
    let (trace, c) = reduced_completion(g)?;
    let cert = if c.base_n <= 1 {
        let reduced = if c.base_n == 1 {
            ArcRepresentation::new(4, vec![(0, 1)])
        } else {
            ArcRepresentation::new(0, vec![])
        };
        Certificate::CircularArc(expand_arcs(&trace, &reduced)?)
    } else {
        decide(&trace, &c)?
    };
    verify(g, &cert)?;
    Ok(cert)
}

fn negative(trace: &ReductionTrace, c: &Completion, obstruction: AvoidWalkPair) -> Certificate {
    Certificate::NotCircularArc(NegativeCertificate {
        reduction: trace.clone(),
        completion: c.graph().clone(),
        partner: (0..c.typed.n()).map(|u| c.partner(u)).collect(),
        obstruction,
    })
}

fn decide(trace: &ReductionTrace, c: &Completion) -> Result<Certificate, RecognizeError> {
    let h = &c.typed;
    let z = min_degree_anchor(h.graph()).expect("completion is nonempty");
    let k = build_knotting(h, z);
    if let TwoColoring::OddCycle(cycle) = bipartite_or_odd_cycle(&k) {
        return Ok(negative(trace, c, extract_invertible_pair(h, &k, &cycle)?));
    }
    match represent(trace, c, z) {
        Ok(cert) => Ok(cert),
        Err(err) => {
            // The min-degree anchor should settle every input; search all
            // anchors before reporting the failure.
            for anchor in 0..h.n() {
                if let Some(w) = find_anchored_invertible_pair(h, anchor) {
                    return Ok(negative(trace, c, w));
                }
            }
            Err(err)
        }
    }
}

/// The positive branch: Z from the disagreement bipartition, an interval
/// ordering of Z, and its lift back to the original graph.
fn represent(
    trace: &ReductionTrace,
    c: &Completion,
    z: Vertex,
) -> Result<Certificate, RecognizeError> {
    let h = &c.typed;
    let y = match disagreement_partition(h, &c.pairing, z)? {
        Disagreement::Bipartition(y) => y,
        Disagreement::Obstruction(w) => return Ok(negative(trace, c, w)),
    };
    let zset = build_z(h, &c.pairing, z, &y)?;
    let labelled = LabelledGraph::inherited(h, &zset);
    let orientation = interval_orientation(&labelled)?;
    let ivals = build_intervals(&labelled, &orientation.order)?;
    let arcs = lift_to_circle(&ivals, &zset, &c.pairing, h)?;
    let base: Vec<Vertex> = (0..c.base_n).collect();
    Ok(Certificate::CircularArc(expand_arcs(
        trace,
        &arcs.restrict(&base),
    )?))
}
