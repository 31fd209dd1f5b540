//! Seeded graph corpus shared by the benchmarks.

use circarc_core::fixtures::{biclaw, biclaw_minus_c};
use circarc_core::generate::{random_arc_graph, random_graph, random_interval_graph};
use circarc_core::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Named inputs, identical on every call.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = vec![
        ("biclaw".to_string(), biclaw()),
        ("biclaw-minus-c".to_string(), biclaw_minus_c()),
    ];
    for n in [25, 50] {
        out.push((format!("interval-{n}"), random_interval_graph(n, &mut rng)));
        out.push((format!("arcs-{n}"), random_arc_graph(n, 0.3, &mut rng)));
    }
    for n in [50, 100] {
        out.push((format!("random-{n}"), random_graph(n, 0.5, &mut rng)));
    }
    out
}
