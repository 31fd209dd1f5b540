//! The JSON certificate document and its mapping to core certificates.
//!
//! Vertices are referred to by name. Added completion vertices get the names
//! chosen by the completion, with extra `~` prefixes if they would collide
//! with an input name.

use std::collections::{BTreeMap, HashMap, HashSet};

use circarc_core::edge_types::{circular_pairs, classify_all};
use circarc_core::{
    ArcRepresentation, AvoidWalkPair, Certificate, Graph, NegativeCertificate, ReductionStep,
    ReductionTrace, Vertex,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_TAG: &str = "ca-cert/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub format: String,
    pub input: InputEcho,
    pub verdict: Verdict,
    pub reduction: Vec<StepDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive: Option<PositiveDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negative: Option<NegativeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputEcho {
    pub n: usize,
    pub names: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CircularArc,
    NotCircularArc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum StepDoc {
    RemoveUniversal { vertex: String },
    MergeTwins { kept: String, removed: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositiveDoc {
    pub circle_size: usize,
    pub arcs: BTreeMap<String, [usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NegativeDoc {
    pub completion: CompletionDoc,
    pub anchor: String,
    pub pair: [String; 2],
    pub walk_p: Vec<String>,
    pub walk_q: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompletionDoc {
    pub added: Vec<AddedDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AddedDoc {
    pub name: String,
    pub partner: String,
    pub neighbors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("unsupported format tag {0:?}")]
    Format(String),
    #[error("verdict {0:?} without its section")]
    MissingSection(Verdict),
    #[error("both positive and negative sections present")]
    BothSections,
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex name {0:?} is used twice")]
    DuplicateName(String),
    #[error("input vertex {0:?} has no arc")]
    MissingArc(String),
    #[error("circular pairs of the completion are not determined: {0}")]
    Pairing(String),
    #[error("completion vertex {0:?} has no partner")]
    Unpaired(String),
}

fn endpoints(g: &Graph, u: Vertex, v: Vertex) -> [String; 2] {
    [g.name(u).to_string(), g.name(v).to_string()]
}

impl CertificateDocument {
    pub fn from_certificate(g: &Graph, cert: &Certificate, trace: Option<&ReductionTrace>) -> Self {
        let input = InputEcho {
            n: g.n(),
            names: g.names().to_vec(),
            edges: g
                .edges()
                .into_iter()
                .map(|(u, v)| endpoints(g, u, v))
                .collect(),
        };
        let step_doc = |s: &ReductionStep| match *s {
            ReductionStep::RemoveUniversal { vertex } => StepDoc::RemoveUniversal {
                vertex: g.name(vertex).to_string(),
            },
            ReductionStep::MergeTwins { kept, removed } => StepDoc::MergeTwins {
                kept: g.name(kept).to_string(),
                removed: g.name(removed).to_string(),
            },
        };
        match cert {
            Certificate::CircularArc(arcs) => CertificateDocument {
                format: FORMAT_TAG.to_string(),
                input,
                verdict: Verdict::CircularArc,
                reduction: trace
                    .map(|t| t.steps.iter().map(step_doc).collect())
                    .unwrap_or_default(),
                positive: Some(PositiveDoc {
                    circle_size: arcs.circle_size,
                    arcs: (0..g.n())
                        .map(|u| (g.name(u).to_string(), [arcs.arcs[u].0, arcs.arcs[u].1]))
                        .collect(),
                }),
                negative: None,
            },
            Certificate::NotCircularArc(neg) => {
                let names = completion_names(g, neg);
                let w = &neg.obstruction;
                let named = |walk: &[Vertex]| walk.iter().map(|&x| names[x].clone()).collect();
                let h = &neg.completion;
                let base = neg.reduction.surviving().len();
                let added = (base..h.n())
                    .map(|a| AddedDoc {
                        name: names[a].clone(),
                        partner: names[neg.partner[a]].clone(),
                        neighbors: h
                            .neighbors(a)
                            .filter(|&x| x != a)
                            .map(|x| names[x].clone())
                            .collect(),
                    })
                    .collect();
                CertificateDocument {
                    format: FORMAT_TAG.to_string(),
                    input,
                    verdict: Verdict::NotCircularArc,
                    reduction: neg.reduction.steps.iter().map(step_doc).collect(),
                    positive: None,
                    negative: Some(NegativeDoc {
                        completion: CompletionDoc { added },
                        anchor: names[w.anchor].clone(),
                        pair: [names[w.pair.0].clone(), names[w.pair.1].clone()],
                        walk_p: named(&w.walk_p),
                        walk_q: named(&w.walk_q),
                    }),
                }
            }
        }
    }

    /// Rebuilds the certificate against `g`, resolving names in `g`. The
    /// result still has to pass [`circarc_core::verify`].
    pub fn to_certificate(&self, g: &Graph) -> Result<Certificate, DocumentError> {
        if self.format != FORMAT_TAG {
            return Err(DocumentError::Format(self.format.clone()));
        }
        let index = name_index(g.names())?;
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| DocumentError::UnknownVertex(name.to_string()))
        };
        let steps = self
            .reduction
            .iter()
            .map(|s| {
                Ok(match s {
                    StepDoc::RemoveUniversal { vertex } => ReductionStep::RemoveUniversal {
                        vertex: lookup(vertex)?,
                    },
                    StepDoc::MergeTwins { kept, removed } => ReductionStep::MergeTwins {
                        kept: lookup(kept)?,
                        removed: lookup(removed)?,
                    },
                })
            })
            .collect::<Result<Vec<_>, DocumentError>>()?;
        let reduction = ReductionTrace {
            original_n: g.n(),
            steps,
        };
        match (self.verdict, &self.positive, &self.negative) {
            (_, Some(_), Some(_)) => Err(DocumentError::BothSections),
            (Verdict::CircularArc, Some(pos), None) => {
                for name in pos.arcs.keys() {
                    lookup(name)?;
                }
                let arcs = (0..g.n())
                    .map(|u| {
                        pos.arcs
                            .get(g.name(u))
                            .map(|&[l, r]| (l, r))
                            .ok_or_else(|| DocumentError::MissingArc(g.name(u).to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Certificate::CircularArc(ArcRepresentation::new(
                    pos.circle_size,
                    arcs,
                )))
            }
            (Verdict::NotCircularArc, None, Some(neg)) => negative_certificate(g, reduction, neg),
            (v, _, _) => Err(DocumentError::MissingSection(v)),
        }
    }
}

fn name_index(names: &[String]) -> Result<HashMap<&str, Vertex>, DocumentError> {
    let mut index = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(DocumentError::DuplicateName(name.clone()));
        }
    }
    Ok(index)
}

/// Names for the completion's vertices: input names for the reduced graph,
/// and collision-free names for the added vertices.
fn completion_names(g: &Graph, neg: &NegativeCertificate) -> Vec<String> {
    let surviving = neg.reduction.surviving();
    let mut taken: HashSet<String> = g.names().iter().cloned().collect();
    let mut names: Vec<String> = surviving.iter().map(|&u| g.name(u).to_string()).collect();
    for a in surviving.len()..neg.completion.n() {
        let mut name = neg.completion.name(a).to_string();
        while taken.contains(&name) {
            name.insert(0, '~');
        }
        taken.insert(name.clone());
        names.push(name);
    }
    names
}

fn negative_certificate(
    g: &Graph,
    reduction: ReductionTrace,
    neg: &NegativeDoc,
) -> Result<Certificate, DocumentError> {
    let surviving = reduction.surviving();
    let mut h = g.induced(&surviving);
    for a in &neg.completion.added {
        h.add_vertex(a.name.clone());
    }
    let names = h.names().to_vec();
    let index = name_index(&names)?;
    let lookup = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| DocumentError::UnknownVertex(name.to_string()))
    };
    let base = surviving.len();
    let mut partner: Vec<Option<Vertex>> = vec![None; h.n()];
    let mut edges = Vec::new();
    for (i, a) in neg.completion.added.iter().enumerate() {
        let p = lookup(&a.partner)?;
        partner[base + i] = Some(p);
        partner[p].get_or_insert(base + i);
        for x in &a.neighbors {
            edges.push((base + i, lookup(x)?));
        }
    }
    for (u, v) in edges {
        if u != v {
            h.add_edge(u, v).expect("indices from lookup");
        }
    }
    if partner.iter().any(Option::is_none) {
        let typed = classify_all(&h).map_err(|e| DocumentError::Pairing(e.to_string()))?;
        let pairs = circular_pairs(&typed).map_err(|e| DocumentError::Pairing(e.to_string()))?;
        for (u, p) in partner.iter_mut().enumerate() {
            if p.is_none() {
                *p = pairs.partner(u);
            }
        }
    }
    let partner = partner
        .iter()
        .enumerate()
        .map(|(u, p)| p.ok_or_else(|| DocumentError::Unpaired(h.name(u).to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let walk = |w: &[String]| w.iter().map(|x| lookup(x)).collect::<Result<Vec<_>, _>>();
    let obstruction = AvoidWalkPair {
        anchor: lookup(&neg.anchor)?,
        pair: (lookup(&neg.pair[0])?, lookup(&neg.pair[1])?),
        walk_p: walk(&neg.walk_p)?,
        walk_q: walk(&neg.walk_q)?,
    };
    Ok(Certificate::NotCircularArc(NegativeCertificate {
        reduction,
        completion: h,
        partner,
        obstruction,
    }))
}
