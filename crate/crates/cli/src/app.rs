//! Subcommands and the exit-code contract.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use circarc_core::knotting::{bipartite_or_odd_cycle, build_knotting, TwoColoring};
use circarc_core::oracle::{
    check_all, cross_check, oracle_representation, random_graphs, Problem, RandomSpec, ORACLE_MAX_N,
};
use circarc_core::recognizer::{min_degree_anchor, reduced_completion};
use circarc_core::{recognize, reduce, verify, Graph};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::document::CertificateDocument;
use crate::dot::{copy_label, knotting_dot};
use crate::format::{parse_edge_list, parse_graph6, write_edge_list, write_graph6, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CIRCULAR_ARC: i32 = 10;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Edgelist,
    Graph6,
}

#[derive(Debug, Parser)]
#[command(
    name = "circarc",
    version,
    about = "Certifying recognition of circular-arc graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether FILE is a circular-arc graph and print a certificate.
    Recognize {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate document against a graph.
    Verify {
        graph: PathBuf,
        cert: PathBuf,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
    },
    /// Brute-force answer for graphs of at most 8 vertices.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
    },
    /// Compare the recognizer with the brute-force oracle.
    Crosscheck {
        /// Check every labelled graph with at most this many vertices.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Random sample N,COUNT,P,SEED; may be repeated.
        #[arg(long, value_parser = parse_random_spec)]
        random: Vec<RandomSpec>,
    },
    /// Print the circular completion of the reduced graph.
    Complete {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
    },
    /// Inspect the anchored knotting graph of the completion.
    Knotting {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
        /// Completion vertex to anchor at; defaults to the pipeline's anchor.
        #[arg(long)]
        anchor: Option<String>,
        /// Write the knotting graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Report bipartiteness at every anchor.
        #[arg(long, conflicts_with_all = ["anchor", "dot"])]
        all_anchors: bool,
    },
}

fn parse_random_spec(s: &str) -> Result<RandomSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [n, count, p, seed] = parts[..] else {
        return Err("expected N,COUNT,P,SEED".into());
    };
    let edge_prob: f64 = p.parse().map_err(|e| format!("P: {e}"))?;
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err("P must lie in [0, 1]".into());
    }
    Ok(RandomSpec {
        n: n.parse().map_err(|e| format!("N: {e}"))?,
        count: count.parse().map_err(|e| format!("COUNT: {e}"))?,
        edge_prob,
        seed: seed.parse().map_err(|e| format!("SEED: {e}"))?,
    })
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, io::Error),
    #[error("{0}: {1}")]
    Parse(PathBuf, ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Io(..) | CliError::Parse(..) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) | CliError::Output(_) => EXIT_INTERNAL,
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    Ok(text)
}

/// Reads a graph; without `--format`, `.g6` and `.graph6` files are graph6.
pub fn read_graph_text(
    text: &str,
    path: &Path,
    format: Option<InputFormat>,
) -> Result<Graph, ParseError> {
    let format = format.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("g6" | "graph6") => InputFormat::Graph6,
        _ => InputFormat::Edgelist,
    });
    match format {
        InputFormat::Edgelist => parse_edge_list(text),
        InputFormat::Graph6 => {
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            Ok(parse_graph6(line.trim())?)
        }
    }
}

fn read_graph(path: &Path, format: Option<InputFormat>) -> Result<Graph, CliError> {
    let text = read_text(path)?;
    read_graph_text(&text, path, format).map_err(|e| CliError::Parse(path.to_path_buf(), e))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "circarc: {e}");
            e.code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Recognize {
            file,
            format,
            out: path,
        } => {
            let g = read_graph(&file, format)?;
            let cert = recognize(&g).map_err(|e| CliError::Internal(e.to_string()))?;
            let (_, trace) = reduce(&g);
            let doc = CertificateDocument::from_certificate(&g, &cert, Some(&trace));
            let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
            text.push('\n');
            match path {
                Some(p) => write_file(&p, &text)?,
                None => out.write_all(text.as_bytes())?,
            }
            if cert.is_circular_arc() {
                writeln!(err, "circular-arc")?;
                Ok(EXIT_OK)
            } else {
                writeln!(err, "not circular-arc")?;
                Ok(EXIT_NOT_CIRCULAR_ARC)
            }
        }
        Command::Verify {
            graph,
            cert,
            format,
        } => {
            let g = read_graph(&graph, format)?;
            let text = read_text(&cert)?;
            let outcome = serde_json::from_str::<CertificateDocument>(&text)
                .map_err(|e| e.to_string())
                .and_then(|doc| doc.to_certificate(&g).map_err(|e| e.to_string()))
                .and_then(|c| verify(&g, &c).map(|()| c).map_err(|e| e.to_string()));
            match outcome {
                Ok(c) => {
                    let verdict = if c.is_circular_arc() {
                        "circular-arc"
                    } else {
                        "not circular-arc"
                    };
                    writeln!(out, "valid certificate: {verdict}")?;
                    Ok(EXIT_OK)
                }
                Err(reason) => {
                    writeln!(out, "invalid certificate: {reason}")?;
                    Ok(EXIT_FAILED)
                }
            }
        }
        Command::Oracle { file, format } => {
            let g = read_graph(&file, format)?;
            match oracle_representation(&g).map_err(|e| CliError::Usage(e.to_string()))? {
                Some(seq) => {
                    let arcs = seq.to_arcs();
                    writeln!(out, "circular-arc on {} slots", arcs.circle_size)?;
                    for (u, &(l, r)) in arcs.arcs.iter().enumerate() {
                        writeln!(out, "{} {l} {r}", g.name(u))?;
                    }
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "not circular-arc")?;
                    Ok(EXIT_NOT_CIRCULAR_ARC)
                }
            }
        }
        Command::Crosscheck { max_n, random } => {
            let mut checked = 0;
            let mut circular_arc = 0;
            let mut problems = 0;
            let mut reports =
                vec![cross_check(max_n, None).map_err(|e| CliError::Usage(e.to_string()))?];
            for spec in &random {
                if spec.n > ORACLE_MAX_N {
                    return Err(CliError::Usage(format!(
                        "random graphs are limited to {ORACLE_MAX_N} vertices"
                    )));
                }
                reports.push(check_all(&random_graphs(spec)));
            }
            for report in reports {
                checked += report.checked;
                circular_arc += report.circular_arc;
                for d in &report.discrepancies {
                    problems += 1;
                    let (kind, detail) = match &d.problem {
                        Problem::VerdictMismatch { recognizer, oracle } => (
                            "verdict",
                            json!({"recognizer": recognizer, "oracle": oracle}),
                        ),
                        Problem::Internal(s) => ("internal", json!(s)),
                        Problem::Certificate(s) => ("certificate", json!(s)),
                        Problem::Oracle(s) => ("oracle", json!(s)),
                    };
                    let g6 = write_graph6(&d.graph).unwrap_or_default();
                    writeln!(
                        out,
                        "{}",
                        json!({"kind": kind, "graph6": g6, "detail": detail})
                    )?;
                }
            }
            writeln!(
                out,
                "{}",
                json!({"checked": checked, "circular_arc": circular_arc, "discrepancies": problems})
            )?;
            Ok(if problems == 0 { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Complete { file, format } => {
            let g = read_graph(&file, format)?;
            let (_, c) = reduced_completion(&g).map_err(|e| CliError::Internal(e.to_string()))?;
            let h = c.graph();
            writeln!(
                out,
                "# completion: {} vertices, {} of them added",
                h.n(),
                h.n() - c.base_n
            )?;
            for u in 0..h.n() {
                let p = c.partner(u);
                if u < p {
                    writeln!(out, "# pair {} {}", h.name(u), h.name(p))?;
                }
            }
            out.write_all(write_edge_list(h).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Knotting {
            file,
            format,
            anchor,
            dot,
            all_anchors,
        } => {
            let g = read_graph(&file, format)?;
            let (_, c) = reduced_completion(&g).map_err(|e| CliError::Internal(e.to_string()))?;
            let h = c.graph();
            if h.n() == 0 {
                return Err(CliError::Usage("the completion is empty".into()));
            }
            let anchors: Vec<usize> = if all_anchors {
                (0..h.n()).collect()
            } else if let Some(name) = anchor {
                let z = h.index_of(&name).ok_or_else(|| {
                    CliError::Usage(format!("no completion vertex named {name:?}"))
                })?;
                vec![z]
            } else {
                vec![min_degree_anchor(h).expect("nonempty")]
            };
            for z in anchors {
                let k = build_knotting(&c.typed, z);
                let coloring = bipartite_or_odd_cycle(&k);
                let verdict = match &coloring {
                    TwoColoring::Colors(_) => "bipartite".to_string(),
                    TwoColoring::OddCycle(cycle) => {
                        let labels: Vec<String> =
                            cycle.iter().map(|&x| copy_label(h, &k, x)).collect();
                        format!("not bipartite; odd cycle {}", labels.join(" "))
                    }
                };
                writeln!(
                    out,
                    "anchor {}: {} copies, {} edges, {verdict}",
                    h.name(z),
                    k.copies.len(),
                    k.edges.len()
                )?;
                if let Some(path) = &dot {
                    write_file(path, &knotting_dot(h, &k, &coloring))?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}
