//! Certifying recognition of circular-arc graphs.
//!
//! [`recognize`] returns either a verified arc representation of the input
//! or an anchored invertible pair in the circular completion of its
//! reduction, which [`verify_negative`] checks without trusting the pipeline.

pub mod arcs;
pub mod delta;
pub mod edge_types;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod intervals;
pub mod knotting;
pub mod oracle;
mod pairwalk;
pub mod recognizer;
pub mod reduce;

pub use arcs::{verify_representation, ArcRepresentation, RepresentationError};
pub use delta::{interval_orientation, verify_interval_ordering, LabelledGraph};
pub use edge_types::{
    avoids, circular_pairs, classify_all, complete, verify_completion, CircularPairing, Completion,
    Containment, EdgeLabels, EdgeType, Label, TypedGraph,
};
pub use graph::{named_graph, Graph, GraphError, Vertex};
pub use intervals::{build_intervals, lift_to_circle, IntervalRepresentation};
pub use knotting::{build_knotting, AvoidWalkPair, KnottingGraph};
pub use oracle::{
    are_isomorphic, cross_check, oracle_is_ca, oracle_representation, EndpointSequence,
};
pub use recognizer::{
    recognize, verify, verify_negative, verify_positive, Certificate, CertificateError,
    NegativeCertificate, RecognizeError,
};
pub use reduce::{expand_arcs, reduce, ReductionStep, ReductionTrace};
