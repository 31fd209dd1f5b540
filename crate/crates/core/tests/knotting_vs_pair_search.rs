//! The knotting graph at `z` is bipartite exactly when no pair is
//! z-invertible. Checked on every completion of a reduced graph with at
//! most five vertices, at every anchor.

use circarc_core::edge_types::{classify_all, complete, EdgeLabels, Label};
use circarc_core::knotting::{
    bipartite_or_odd_cycle, build_knotting, extract_invertible_pair, find_anchored_invertible_pair,
    two_color, KnottingGraph, TwoColoring,
};
use circarc_core::Graph;

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

/// Edge rule restricted to adjacent pairs.
fn adjacent_only_bipartite<L: EdgeLabels>(h: &L, k: &KnottingGraph) -> bool {
    let mut adj = vec![Vec::new(); k.copies.len()];
    for (i, &u) in k.members.iter().enumerate() {
        for &v in &k.members[i + 1..] {
            if h.label(u, v) == Label::Overlap {
                let a = k.copy_id(u, k.gamma(u, v).unwrap()).unwrap();
                let b = k.copy_id(v, k.gamma(v, u).unwrap()).unwrap();
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    matches!(two_color(&adj), TwoColoring::Colors(_))
}

#[test]
fn knotting_bipartite_iff_no_anchored_invertible_pair() {
    let mut checked = 0;
    let mut adjacent_rule_misses = 0;
    for n in 2..=5 {
        for g in all_graphs(n) {
            let Ok(t) = classify_all(&g) else { continue };
            let c = complete(&t).unwrap();
            let h = &c.typed;
            for z in 0..h.n() {
                let k = build_knotting(h, z);
                let direct = find_anchored_invertible_pair(h, z);
                match bipartite_or_odd_cycle(&k) {
                    TwoColoring::Colors(_) => assert!(direct.is_none(), "{g:?} at {z}"),
                    TwoColoring::OddCycle(cycle) => {
                        assert!(direct.is_some(), "{g:?} at {z}");
                        extract_invertible_pair(h, &k, &cycle).unwrap();
                    }
                }
                if adjacent_only_bipartite(h, &k) && direct.is_some() {
                    adjacent_rule_misses += 1;
                }
                checked += 1;
            }
        }
    }
    println!("{checked} anchored completions; adjacent-only rule misses {adjacent_rule_misses}");
    assert!(checked > 0);
}
