//! Brute-force circular-arc testing by backtracking over endpoint orders,
//! and a harness that compares it with [`recognize`](crate::recognize).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::arcs::ArcRepresentation;
use crate::generate::random_graph;
use crate::graph::{Graph, Vertex};
use crate::recognizer::{recognize, verify};

pub const ORACLE_MAX_N: usize = 8;
pub const ENUMERATE_MAX_N: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Left(Vertex),
    Right(Vertex),
}

/// A circular word holding `Left(v)` and `Right(v)` once per vertex; `v`'s
/// arc runs clockwise from its left to its right endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointSequence {
    pub symbols: Vec<Endpoint>,
}

impl EndpointSequence {
    pub fn to_arcs(&self) -> ArcRepresentation {
        let n = self.symbols.len() / 2;
        let mut arcs = vec![(0, 0); n];
        for (p, s) in self.symbols.iter().enumerate() {
            match *s {
                Endpoint::Left(v) => arcs[v].0 = p,
                Endpoint::Right(v) => arcs[v].1 = p,
            }
        }
        ArcRepresentation::new(2 * n, arcs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} vertices exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },
}

struct Search {
    n: usize,
    adj: Vec<u16>,
    symbols: Vec<Endpoint>,
    left_at: Vec<Option<usize>>,
    right_at: Vec<Option<usize>>,
    /// For vertices with no endpoint placed yet: whether their first
    /// endpoint must be the right one.
    forced: Vec<Option<bool>>,
}

impl Search {
    fn started(&self, w: Vertex) -> bool {
        self.left_at[w].is_some() || self.right_at[w].is_some()
    }

    /// Whether the already-placed arc `u` contains the current position.
    fn covers_now(&self, u: Vertex) -> bool {
        match (self.left_at[u], self.right_at[u]) {
            (Some(_), None) => true,
            (Some(l), Some(r)) => r < l,
            _ => false,
        }
    }

    fn place_left(&self, v: Vertex) -> bool {
        let p = self.symbols.len();
        (0..self.n)
            .filter(|&u| u != v)
            .all(|u| match self.left_at[u] {
                None => true,
                Some(lu) => {
                    let meet =
                        self.covers_now(u) || self.right_at[v].is_some_and(|rv| rv > lu && rv < p);
                    meet == (self.adj[v] >> u & 1 == 1)
                }
            })
    }

    fn extend(&mut self) -> bool {
        if self.symbols.len() == 2 * self.n {
            return true;
        }
        for v in 0..self.n {
            if self.left_at[v].is_none() && self.forced[v] != Some(true) && self.place_left(v) {
                let p = self.symbols.len();
                let saved = self.forced[v].take();
                self.left_at[v] = Some(p);
                self.symbols.push(Endpoint::Left(v));
                if self.extend() {
                    return true;
                }
                self.symbols.pop();
                self.left_at[v] = None;
                self.forced[v] = saved;
            }
            if self.right_at[v].is_some() {
                continue;
            }
            if self.left_at[v].is_none() {
                // v wraps: its arc covers every left endpoint placed so far
                if self.forced[v] == Some(false)
                    || (0..self.n)
                        .any(|u| u != v && self.left_at[u].is_some() && self.adj[v] >> u & 1 == 0)
                {
                    continue;
                }
                let p = self.symbols.len();
                let saved = self.forced[v].take();
                self.right_at[v] = Some(p);
                self.symbols.push(Endpoint::Right(v));
                if self.extend() {
                    return true;
                }
                self.symbols.pop();
                self.right_at[v] = None;
                self.forced[v] = saved;
            } else {
                // closing v: an unstarted w meets v iff w starts with its right end
                let mut changed = Vec::new();
                let mut ok = true;
                let unstarted: Vec<Vertex> = (0..self.n)
                    .filter(|&w| w != v && !self.started(w))
                    .collect();
                for w in unstarted {
                    let need = self.adj[v] >> w & 1 == 1;
                    match self.forced[w] {
                        Some(f) if f != need => {
                            ok = false;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            self.forced[w] = Some(need);
                            changed.push(w);
                        }
                    }
                }
                if ok {
                    let p = self.symbols.len();
                    self.right_at[v] = Some(p);
                    self.symbols.push(Endpoint::Right(v));
                    if self.extend() {
                        return true;
                    }
                    self.symbols.pop();
                    self.right_at[v] = None;
                }
                for w in changed {
                    self.forced[w] = None;
                }
            }
        }
        false
    }
}

/// Searches for an endpoint sequence realizing `g`, with vertex 0's left
/// endpoint fixed first.
pub fn oracle_representation(g: &Graph) -> Result<Option<EndpointSequence>, OracleError> {
    let n = g.n();
    if n > ORACLE_MAX_N {
        return Err(OracleError::TooLarge {
            n,
            max: ORACLE_MAX_N,
        });
    }
    if n == 0 {
        return Ok(Some(EndpointSequence { symbols: vec![] }));
    }
    let adj = (0..n)
        .map(|u| {
            g.neighbors(u)
                .filter(|&v| v != u)
                .fold(0u16, |m, v| m | 1 << v)
        })
        .collect();
    let mut s = Search {
        n,
        adj,
        symbols: vec![Endpoint::Left(0)],
        left_at: vec![None; n],
        right_at: vec![None; n],
        forced: vec![None; n],
    };
    s.left_at[0] = Some(0);
    Ok(s.extend()
        .then_some(EndpointSequence { symbols: s.symbols }))
}

pub fn oracle_is_ca(g: &Graph) -> Result<bool, OracleError> {
    Ok(oracle_representation(g)?.is_some())
}

/// Every simple graph on `0..n`; graph `mask` has the edge of the `i`-th
/// pair `(u, v)`, `u < v` in lexicographic order, iff bit `i` is set.
pub fn enumerate_labelled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, OracleError> {
    if n > ENUMERATE_MAX_N {
        return Err(OracleError::TooLarge {
            n,
            max: ENUMERATE_MAX_N,
        });
    }
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Ok((0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(Vertex, Vertex)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).expect("pairs in range")
    }))
}

/// Brute-force isomorphism test: backtracking over vertex maps that
/// preserve closed degree and adjacency to already mapped vertices.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|u| a.closed_degree(u)).collect();
    let mut db: Vec<usize> = (0..n).map(|u| b.closed_degree(u)).collect();
    let (ka, kb) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    // map high-degree vertices first; they constrain the rest most
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(ka[u]));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_map(a, b, &ka, &kb, &order, 0, &mut image, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend_map(
    a: &Graph,
    b: &Graph,
    ka: &[usize],
    kb: &[usize],
    order: &[Vertex],
    i: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&u) = order.get(i) else {
        return true;
    };
    for x in 0..b.n() {
        if used[x] || kb[x] != ka[u] {
            continue;
        }
        if order[..i]
            .iter()
            .any(|&w| a.adjacent(u, w) != b.adjacent(x, image[w]))
        {
            continue;
        }
        image[u] = x;
        used[x] = true;
        if extend_map(a, b, ka, kb, order, i + 1, image, used) {
            return true;
        }
        used[x] = false;
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    pub n: usize,
    pub count: usize,
    pub edge_prob: f64,
    pub seed: u64,
}

/// Random graphs for a spec, identical for identical specs.
pub fn random_graphs(spec: &RandomSpec) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count)
        .map(|_| random_graph(spec.n, spec.edge_prob, &mut rng))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    VerdictMismatch { recognizer: bool, oracle: bool },
    Internal(String),
    Certificate(String),
    Oracle(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub graph: Graph,
    pub problem: Problem,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub checked: usize,
    pub circular_arc: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl CrossCheckReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Runs the recognizer and the oracle on one graph. Returns the oracle's
/// verdict, or the problem found.
pub fn check_graph(g: &Graph) -> Result<bool, Problem> {
    let expected = oracle_is_ca(g).map_err(|e| Problem::Oracle(e.to_string()))?;
    let cert = recognize(g).map_err(|e| Problem::Internal(e.to_string()))?;
    verify(g, &cert).map_err(|e| Problem::Certificate(e.to_string()))?;
    if cert.is_circular_arc() != expected {
        return Err(Problem::VerdictMismatch {
            recognizer: cert.is_circular_arc(),
            oracle: expected,
        });
    }
    Ok(expected)
}

/// Checks `graphs` in parallel; discrepancies keep input order.
pub fn check_all(graphs: &[Graph]) -> CrossCheckReport {
    let results: Vec<Result<bool, Problem>> = graphs.par_iter().map(check_graph).collect();
    let mut report = CrossCheckReport::default();
    for (g, r) in graphs.iter().zip(results) {
        report.checked += 1;
        match r {
            Ok(ca) => report.circular_arc += usize::from(ca),
            Err(problem) => report.discrepancies.push(Discrepancy {
                graph: g.clone(),
                problem,
            }),
        }
    }
    report
}

/// Every graph on at most `max_n` vertices, then the random sample if any.
pub fn cross_check(
    max_n: usize,
    random: Option<&RandomSpec>,
) -> Result<CrossCheckReport, OracleError> {
    let mut graphs = Vec::new();
    for n in 0..=max_n {
        graphs.extend(enumerate_labelled_graphs(n)?);
    }
    if let Some(spec) = random {
        if spec.n > ORACLE_MAX_N {
            return Err(OracleError::TooLarge {
                n: spec.n,
                max: ORACLE_MAX_N,
            });
        }
        graphs.extend(random_graphs(spec));
    }
    Ok(check_all(&graphs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::verify_representation;
    use crate::fixtures::{biclaw, biclaw_minus_c, complete, cycle};

    #[test]
    fn known_graphs() {
        assert!(!oracle_is_ca(&biclaw()).unwrap());
        assert!(oracle_is_ca(&biclaw_minus_c()).unwrap());
        assert!(oracle_is_ca(&cycle(4)).unwrap());
        assert!(oracle_is_ca(&complete(5)).unwrap());
        assert!(oracle_is_ca(&Graph::empty(0)).unwrap());
        let c4_k1 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!oracle_is_ca(&c4_k1).unwrap());
    }

    #[test]
    fn representations_realize() {
        for g in [cycle(5), complete(3), biclaw_minus_c(), Graph::empty(3)] {
            let seq = oracle_representation(&g).unwrap().unwrap();
            verify_representation(&g, &seq.to_arcs()).unwrap();
        }
    }

    #[test]
    fn size_caps() {
        assert!(oracle_is_ca(&Graph::empty(9)).is_err());
        assert!(enumerate_labelled_graphs(7).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_labelled_graphs(0).unwrap().count(), 1);
        assert_eq!(enumerate_labelled_graphs(1).unwrap().count(), 1);
        assert_eq!(enumerate_labelled_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_labelled_graphs(5).unwrap().count(), 1024);
    }

    #[test]
    fn small_cross_check() {
        let r = cross_check(4, None).unwrap();
        assert_eq!(r.checked, 1 + 1 + 2 + 8 + 64);
        assert!(r.is_clean(), "{:?}", r.discrepancies);
    }

    #[test]
    fn random_graphs_are_reproducible() {
        let spec = RandomSpec {
            n: 6,
            count: 5,
            edge_prob: 0.5,
            seed: 7,
        };
        assert_eq!(random_graphs(&spec), random_graphs(&spec));
    }

    #[test]
    fn isomorphism() {
        let c5 = cycle(5);
        assert!(are_isomorphic(&c5, &c5.permuted(&[2, 4, 1, 0, 3])));
        assert!(!are_isomorphic(&c5, &crate::fixtures::path(5)));
        let p3_k1 = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let k2_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!are_isomorphic(&p3_k1, &k2_k2));
        assert!(are_isomorphic(
            &biclaw(),
            &biclaw().permuted(&[6, 5, 4, 3, 2, 1, 0])
        ));
    }
}
