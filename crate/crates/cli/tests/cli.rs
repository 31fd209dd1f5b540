use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use circarc_cli::format::{parse_graph6, write_graph6};
use circarc_core::oracle::enumerate_labelled_graphs;
use proptest::prelude::*;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn circarc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circarc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn recognize_exit_codes() {
    let bi = circarc(&["recognize", data("biclaw.el").to_str().unwrap()]);
    assert_eq!(bi.status.code(), Some(10));
    assert!(stdout(&bi).contains("\"verdict\": \"not-circular-arc\""));
    assert_eq!(String::from_utf8_lossy(&bi.stderr), "not circular-arc\n");

    let c4 = circarc(&["recognize", data("c4.el").to_str().unwrap()]);
    assert_eq!(c4.status.code(), Some(0));
    assert!(stdout(&c4).contains("\"verdict\": \"circular-arc\""));

    let missing = circarc(&["recognize", "/nonexistent/graph.el"]);
    assert_eq!(missing.status.code(), Some(2));
    let no_args = circarc(&["recognize"]);
    assert_eq!(no_args.status.code(), Some(2));
}

#[test]
fn verify_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    for (graph, code) in [("c4.el", 0), ("biclaw.el", 10), ("biclaw_minus_c.el", 0)] {
        let cert = dir.path().join(format!("{graph}.json"));
        let g = data(graph);
        let r = circarc(&[
            "recognize",
            g.to_str().unwrap(),
            "--out",
            cert.to_str().unwrap(),
        ]);
        assert_eq!(r.status.code(), Some(code));
        assert!(r.stdout.is_empty());
        let v = circarc(&["verify", g.to_str().unwrap(), cert.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
        assert!(stdout(&v).starts_with("valid certificate"));

        let text = std::fs::read_to_string(&cert).unwrap();
        let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        if let Some(arcs) = doc["positive"]["arcs"].as_object_mut() {
            for arc in arcs.values_mut() {
                *arc = serde_json::json!([0, 1]);
            }
        } else {
            doc["negative"]["anchor"] = doc["negative"]["pair"][0].clone();
        }
        let tampered = serde_json::to_string_pretty(&doc).unwrap();
        assert_ne!(tampered, text);
        let bad = dir.path().join("bad.json");
        std::fs::write(&bad, tampered).unwrap();
        let v = circarc(&["verify", g.to_str().unwrap(), bad.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(1), "{graph}: {}", stdout(&v));
        assert!(stdout(&v).starts_with("invalid certificate"));
    }
}

#[test]
fn verify_rejects_certificate_of_another_graph() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c4.json");
    let r = circarc(&[
        "recognize",
        data("c4.el").to_str().unwrap(),
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(0));
    let v = circarc(&[
        "verify",
        data("biclaw.el").to_str().unwrap(),
        cert.to_str().unwrap(),
    ]);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn knotting_with_forced_anchor() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("k.dot");
    let k = circarc(&[
        "knotting",
        data("biclaw_minus_c.el").to_str().unwrap(),
        "--anchor",
        "f",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(k.status.code(), Some(0));
    assert!(stdout(&k).starts_with("anchor f:"));
    assert!(stdout(&k).trim_end().ends_with("bipartite"));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph"));

    let k = circarc(&[
        "knotting",
        data("biclaw.el").to_str().unwrap(),
        "--anchor",
        "f",
    ]);
    assert!(stdout(&k).contains("not bipartite; odd cycle"));
    let k = circarc(&[
        "knotting",
        data("biclaw.el").to_str().unwrap(),
        "--anchor",
        "zz",
    ]);
    assert_eq!(k.status.code(), Some(2));
}

#[test]
fn complete_and_oracle_commands() {
    let c = circarc(&["complete", data("biclaw.el").to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
    let text = stdout(&c);
    assert!(text.starts_with("# completion: 14 vertices, 7 of them added"));
    assert_eq!(text.lines().filter(|l| l.starts_with("# pair")).count(), 7);

    let o = circarc(&["oracle", data("c4.el").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("circular-arc on 8 slots"));
    let o = circarc(&["oracle", data("biclaw.el").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(10));
}

#[test]
fn crosscheck_summary() {
    let o = circarc(&["crosscheck", "--max-n", "4", "--random", "6,20,0.5,1"]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&last).unwrap();
    assert_eq!(v["checked"], 76 + 20);
    assert_eq!(v["discrepancies"], 0);
    let o = circarc(&["crosscheck", "--random", "6,20,half,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn graph6_input() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("c4.g6");
    std::fs::write(&g6, "Cl\n").unwrap();
    let o = circarc(&["recognize", g6.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let plain = dir.path().join("c4.txt");
    std::fs::write(&plain, "Cl\n").unwrap();
    let o = circarc(&["recognize", plain.to_str().unwrap(), "--format", "graph6"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&g6, "C~~\n").unwrap();
    let o = circarc(&["recognize", g6.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn graph6_round_trip_small_graphs() {
    for n in 0..=5 {
        for g in enumerate_labelled_graphs(n).unwrap() {
            let s = write_graph6(&g).unwrap();
            let back = parse_graph6(&s).unwrap();
            assert!(back.same_adjacency(&g));
            assert_eq!(write_graph6(&back).unwrap(), s);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn graph6_mutations_are_caught(
        n in 0usize..12,
        bits in proptest::collection::vec(any::<bool>(), 66),
        at in any::<prop::sample::Index>(),
        byte in any::<u8>(),
    ) {
        let mut g = circarc_core::Graph::empty(n);
        let mut k = 0;
        for v in 1..n {
            for u in 0..v {
                if bits[k] {
                    g.add_edge(u, v).unwrap();
                }
                k += 1;
            }
        }
        let s = write_graph6(&g).unwrap();
        let mut bytes = s.clone().into_bytes();
        let i = at.index(bytes.len());
        prop_assume!(bytes[i] != byte);
        bytes[i] = byte;
        if let Ok(text) = String::from_utf8(bytes) {
            if let Ok(h) = parse_graph6(&text) {
                prop_assert!(h.n() != g.n() || !h.same_adjacency(&g));
            }
        }
    }
}
