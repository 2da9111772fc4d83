//! Command-line front end.
//!
//! `lexcycle <mcb|lsc|lsp|check|decomp|gen|verify> [flags]`. Exit code 0 is
//! success, 1 a validation or input error, 2 a verification mismatch (a
//! structural guarantee failed to hold), so CI can treat 2 as a
//! correctness regression. All output is deterministic for a fixed argv.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cycle::{Cycle, CycleSet};
use crate::generate::{self, Family, GeneratorSpec};
use crate::graph::WeightedGraph;
use crate::lexpath::{brute_force_lsp, lex_shortest_paths_from, lsp_table};
use crate::lsc::{enumerate_all_simple_cycles, enumerate_lex_short_cycles, is_lex_short};
use crate::mcb::{horton_mcb, mcb_partial_2tree, verify_cycle_basis, McbError};
use crate::structure::{decomp, find_three_component_separator, is_outerplanar, is_partial_2tree};

const EXIT_OK: i32 = 0;
const EXIT_VALIDATION: i32 = 1;
const EXIT_MISMATCH: i32 = 2;

#[derive(Parser)]
#[command(
    name = "lexcycle",
    version,
    about = "Minimum cycle bases of weighted partial 2-trees via lex short cycles",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Partial2tree,
    Outerplanar,
    Wheel,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum cycle basis of a connected weighted partial 2-tree
    Mcb {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Enumerate the lex short cycles
    Lsc {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Use the brute-force all-cycles oracle instead of the fast path
        #[arg(long)]
        oracle: bool,
    },
    /// Lex shortest path between two vertices
    Lsp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        source: usize,
        #[arg(long)]
        target: usize,
        /// Use the exhaustive path-enumeration oracle
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Report structural properties of the input graph
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Split the graph at a separator pair into two overlapping subgraphs
    Decomp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Generate a seeded random graph and print it in the input format
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Edges to delete after growing a 2-tree (partial2tree family)
        #[arg(long, default_value_t = 0)]
        delete_count: usize,
        /// Chord insertion attempts (outerplanar family); default 2n
        #[arg(long)]
        chords: Option<usize>,
        #[arg(long, default_value_t = 100)]
        max_weight: u64,
        /// Rim edge weight (wheel family)
        #[arg(long, default_value_t = 1)]
        rim_weight: u64,
        /// Spoke edge weight (wheel family)
        #[arg(long, default_value_t = 100)]
        spoke_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cross-check the lex-short-cycle basis against the Horton oracle
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    fn mismatch(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MISMATCH,
            message: message.into(),
        }
    }
}

/// Parses `args` (without the program name), executes the subcommand and
/// writes to the given sinks. Returns the process exit code.
pub fn run(args: &[String], out: &mut impl Write, err: &mut impl Write) -> i32 {
    let argv = std::iter::once("lexcycle".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_VALIDATION
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary: real argv, stdout and stderr.
pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    let code = run(&args, &mut out, &mut err);
    let _ = out.flush();
    let _ = err.flush();
    code
}

fn dispatch(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Mcb { input, format } => cmd_mcb(&input, format),
        Command::Lsc {
            input,
            format,
            oracle,
        } => cmd_lsc(&input, format, oracle),
        Command::Lsp {
            input,
            source,
            target,
            oracle,
            format,
        } => cmd_lsp(&input, source, target, oracle, format),
        Command::Check { input, format } => cmd_check(&input, format),
        Command::Decomp {
            input,
            u,
            v,
            format,
        } => cmd_decomp(&input, u, v, format),
        Command::Gen {
            family,
            n,
            delete_count,
            chords,
            max_weight,
            rim_weight,
            spoke_weight,
            seed,
            format,
        } => {
            let mut spec = GeneratorSpec::new(
                match family {
                    FamilyArg::Partial2tree => Family::Partial2Tree,
                    FamilyArg::Outerplanar => Family::Outerplanar,
                    FamilyArg::Wheel => Family::Wheel,
                },
                n,
                seed,
            );
            spec.delete_count = delete_count;
            if let Some(c) = chords {
                spec.chords = c;
            }
            spec.max_weight = max_weight;
            spec.rim_weight = rim_weight;
            spec.spoke_weight = spoke_weight;
            cmd_gen(&spec, format)
        }
        Command::Verify { input, format } => cmd_verify(&input, format),
    }
}

fn load_graph(path: &PathBuf) -> Result<WeightedGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::validation(format!("cannot read {}: {e}", path.display())))?;
    WeightedGraph::parse(&text).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct CycleJson {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    weight: u64,
}

impl CycleJson {
    fn from_cycle(c: &Cycle) -> Self {
        CycleJson {
            vertices: c.vertex_sequence(),
            edges: c.edge_set().to_vec(),
            weight: c.weight(),
        }
    }
}

/// The JSON shape shared by every cycle-bearing subcommand.
#[derive(Serialize)]
struct CyclesJson {
    n: usize,
    m: usize,
    count: usize,
    total_weight: u64,
    cycles: Vec<CycleJson>,
}

impl CyclesJson {
    fn new(g: &WeightedGraph, cycles: &CycleSet) -> Self {
        CyclesJson {
            n: g.n(),
            m: g.m(),
            count: cycles.len(),
            total_weight: cycles.total_weight(),
            cycles: cycles.iter().map(CycleJson::from_cycle).collect(),
        }
    }
}

fn render_cycles_text(g: &WeightedGraph, cycles: &CycleSet) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n: {}", g.n());
    let _ = writeln!(s, "m: {}", g.m());
    let _ = writeln!(s, "count: {}", cycles.len());
    let _ = writeln!(s, "total_weight: {}", cycles.total_weight());
    for c in cycles {
        let _ = writeln!(s, "cycle: {c}");
    }
    s
}

fn to_json_line(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("serializable report");
    s.push('\n');
    s
}

fn cmd_lsc(input: &PathBuf, format: Format, oracle: bool) -> Result<String, Failure> {
    let g = load_graph(input)?;
    let cycles = if oracle {
        let table = lsp_table(&g);
        let all =
            enumerate_all_simple_cycles(&g).map_err(|e| Failure::validation(e.to_string()))?;
        CycleSet::from_cycles(
            all.into_iter()
                .filter(|c| is_lex_short(&g, c, &table))
                .collect(),
        )
    } else {
        enumerate_lex_short_cycles(&g)
    };
    Ok(match format {
        Format::Text => render_cycles_text(&g, &cycles),
        Format::Json => to_json_line(&CyclesJson::new(&g, &cycles)),
    })
}

fn cmd_mcb(input: &PathBuf, format: Format) -> Result<String, Failure> {
    let g = load_graph(input)?;
    let basis = mcb_partial_2tree(&g).map_err(|e| match e {
        McbError::NotPartial2Tree => Failure::validation(e.to_string()),
        other => Failure::mismatch(other.to_string()),
    })?;
    let report = verify_cycle_basis(&g, basis.cycles.cycles());
    Ok(match format {
        Format::Text => {
            let mut s = render_cycles_text(&g, &basis.cycles);
            let _ = writeln!(s, "dimension: {}", basis.dimension);
            let _ = writeln!(
                s,
                "verification: cardinality_ok={} independent={} spans={}",
                report.cardinality_ok, report.independent, report.spans
            );
            s
        }
        Format::Json => {
            let mut value =
                serde_json::to_value(CyclesJson::new(&g, &basis.cycles)).expect("serializable");
            value["dimension"] = json!(basis.dimension);
            value["verification"] = json!({
                "cardinality_ok": report.cardinality_ok,
                "independent": report.independent,
                "spans": report.spans,
            });
            let mut s = value.to_string();
            s.push('\n');
            s
        }
    })
}

fn cmd_lsp(
    input: &PathBuf,
    source: usize,
    target: usize,
    oracle: bool,
    format: Format,
) -> Result<String, Failure> {
    let g = load_graph(input)?;
    for x in [source, target] {
        if x >= g.n() {
            return Err(Failure::validation(format!(
                "vertex {x} out of range (n = {})",
                g.n()
            )));
        }
    }
    if source == target {
        return Err(Failure::validation("source and target must differ"));
    }
    let path = if oracle {
        brute_force_lsp(&g, source, target).map_err(|e| Failure::validation(e.to_string()))?
    } else {
        lex_shortest_paths_from(&g, source)
            .into_iter()
            .nth(target)
            .expect("target is a vertex")
    };
    Ok(match format {
        Format::Text => {
            format!(
                "path: {path}\nweight: {}\nlength: {}\n",
                path.weight(),
                path.len()
            )
        }
        Format::Json => to_json_line(&json!({
            "source": source,
            "target": target,
            "vertices": path.vertices(),
            "weight": path.weight(),
            "length": path.len(),
        })),
    })
}

fn cmd_check(input: &PathBuf, format: Format) -> Result<String, Failure> {
    let g = load_graph(input)?;
    // parsing already enforces simplicity and connectivity
    let p2t = is_partial_2tree(&g);
    let outerplanar = if p2t {
        Some(is_outerplanar(&g).expect("precondition checked"))
    } else {
        None
    };
    let separator = if p2t {
        find_three_component_separator(&g).expect("precondition checked")
    } else {
        None
    };
    Ok(match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "n: {}", g.n());
            let _ = writeln!(s, "m: {}", g.m());
            let _ = writeln!(s, "simple: true");
            let _ = writeln!(s, "connected: true");
            let _ = writeln!(s, "partial-2-tree: {p2t}");
            match outerplanar {
                Some(o) => {
                    let _ = writeln!(s, "outerplanar: {o}");
                }
                None => {
                    let _ = writeln!(s, "outerplanar: n/a (not a partial 2-tree)");
                }
            }
            match separator {
                Some((u, v)) => {
                    let _ = writeln!(s, "three-component-separator: {{{u},{v}}}");
                }
                None if p2t => {
                    let _ = writeln!(s, "three-component-separator: none");
                }
                None => {
                    let _ = writeln!(s, "three-component-separator: n/a (not a partial 2-tree)");
                }
            }
            s
        }
        Format::Json => to_json_line(&json!({
            "n": g.n(),
            "m": g.m(),
            "simple": true,
            "connected": true,
            "partial_2tree": p2t,
            "outerplanar": outerplanar,
            "three_component_separator": separator.map(|(u, v)| vec![u, v]),
        })),
    })
}

fn cmd_decomp(input: &PathBuf, u: usize, v: usize, format: Format) -> Result<String, Failure> {
    let g = load_graph(input)?;
    let d = decomp(&g, u, v).map_err(|e| Failure::validation(e.to_string()))?;
    Ok(match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "# separator: {{{u},{v}}}",
                u = d.separator.0,
                v = d.separator.1
            );
            let _ = writeln!(s, "# lsp: {} (weight {})", d.sep_path, d.sep_path.weight());
            let avoided: Vec<String> = d.avoided.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "# avoided component: {{{}}}", avoided.join(","));
            for (name, sub) in [("g1", &d.g1), ("g2", &d.g2)] {
                let parents: Vec<String> = sub
                    .parent_vertices()
                    .iter()
                    .map(|x| x.to_string())
                    .collect();
                let _ = writeln!(s, "# {name}: parent vertices [{}]", parents.join(","));
                s.push_str(&sub.graph().to_text());
            }
            s
        }
        Format::Json => to_json_line(&json!({
            "separator": [d.separator.0, d.separator.1],
            "sep_path": d.sep_path.vertices(),
            "sep_path_weight": d.sep_path.weight(),
            "avoided": d.avoided,
            "g1": {
                "n": d.g1.graph().n(),
                "m": d.g1.graph().m(),
                "parent_vertices": d.g1.parent_vertices(),
                "graph": d.g1.graph().to_text(),
            },
            "g2": {
                "n": d.g2.graph().n(),
                "m": d.g2.graph().m(),
                "parent_vertices": d.g2.parent_vertices(),
                "graph": d.g2.graph().to_text(),
            },
        })),
    })
}

fn cmd_gen(spec: &GeneratorSpec, format: Format) -> Result<String, Failure> {
    let g = generate::generate(spec).map_err(|e| Failure::validation(e.to_string()))?;
    Ok(match format {
        Format::Text => g.to_text(),
        Format::Json => to_json_line(&json!({
            "family": match spec.family {
                Family::Partial2Tree => "partial2tree",
                Family::Outerplanar => "outerplanar",
                Family::Wheel => "wheel",
            },
            "seed": spec.seed,
            "n": g.n(),
            "m": g.m(),
            "graph": g.to_text(),
        })),
    })
}

fn cmd_verify(input: &PathBuf, format: Format) -> Result<String, Failure> {
    let g = load_graph(input)?;
    if !is_partial_2tree(&g) {
        return Err(Failure::validation(
            "precondition failed: graph is not a partial 2-tree",
        ));
    }
    let basis = mcb_partial_2tree(&g).map_err(|e| Failure::mismatch(e.to_string()))?;
    let horton = horton_mcb(&g).map_err(|e| match e {
        McbError::GuardExceeded { .. } => Failure::validation(e.to_string()),
        other => Failure::mismatch(other.to_string()),
    })?;
    let report = verify_cycle_basis(&g, basis.cycles.cycles());
    let weights_match = basis.total_weight == horton.total_weight;
    let ok = weights_match && report.all_ok();
    let text = match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "partial-2-tree: true");
            let _ = writeln!(
                s,
                "lsc count: {} (expected {})",
                report.count, report.expected_dimension
            );
            let _ = writeln!(s, "lsc weight: {}", basis.total_weight);
            let _ = writeln!(s, "horton weight: {}", horton.total_weight);
            let _ = writeln!(
                s,
                "verification: cardinality_ok={} independent={} spans={}",
                report.cardinality_ok, report.independent, report.spans
            );
            let _ = writeln!(s, "result: {}", if ok { "match" } else { "MISMATCH" });
            s
        }
        Format::Json => to_json_line(&json!({
            "partial_2tree": true,
            "lsc_count": report.count,
            "expected_count": report.expected_dimension,
            "lsc_weight": basis.total_weight,
            "horton_weight": horton.total_weight,
            "cardinality_ok": report.cardinality_ok,
            "independent": report.independent,
            "spans": report.spans,
            "match": ok,
        })),
    };
    if ok {
        Ok(text)
    } else {
        Err(Failure::mismatch(format!(
            "lex-short-cycle basis disagrees with the Horton oracle\n{text}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&args, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn write_graph(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    #[test]
    fn mcb_on_triangle() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_graph(&dir, "k3.graph", "p 3 3\ne 0 1 1\ne 1 2 1\ne 0 2 1\n");
        let (code, out, _) = run_cli(&["mcb", "--input", &path]);
        assert_eq!(code, 0);
        assert!(out.contains("total_weight: 3"), "{out}");
        assert!(out.contains("count: 1"));
    }

    #[test]
    fn verify_rejects_wheel_as_precondition_failure() {
        let dir = tempfile::tempdir().unwrap();
        let wheel = crate::generate::gen_wheel(9, 1, 100).unwrap();
        let path = write_graph(&dir, "w9.graph", &wheel.to_text());
        let (code, _, err) = run_cli(&["verify", "--input", &path]);
        assert_eq!(code, 1);
        assert!(err.contains("not a partial 2-tree"), "{err}");
    }

    #[test]
    fn verify_passes_on_k23() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_graph(
            &dir,
            "k23.graph",
            "p 5 6\ne 0 2 1\ne 0 3 1\ne 0 4 1\ne 1 2 1\ne 1 3 1\ne 1 4 1\n",
        );
        let (code, out, _) = run_cli(&["verify", "--input", &path]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("result: match"));
    }

    #[test]
    fn check_reports_k23_structure() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_graph(
            &dir,
            "k23.graph",
            "p 5 6\ne 0 2 1\ne 0 3 1\ne 0 4 1\ne 1 2 1\ne 1 3 1\ne 1 4 1\n",
        );
        let (code, out, _) = run_cli(&["check", "--input", &path]);
        assert_eq!(code, 0);
        assert!(out.contains("partial-2-tree: true"));
        assert!(out.contains("outerplanar: false"));
        assert!(out.contains("three-component-separator: {0,1}"));
    }

    #[test]
    fn unknown_subcommand_exits_1() {
        let (code, _, err) = run_cli(&["frobnicate"]);
        assert_eq!(code, 1);
        assert!(!err.is_empty());
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_cli(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("lexcycle"));
    }

    #[test]
    fn gen_is_deterministic_and_reparses() {
        let a = run_cli(&[
            "gen",
            "--family",
            "partial2tree",
            "--n",
            "12",
            "--seed",
            "5",
        ]);
        let b = run_cli(&[
            "gen",
            "--family",
            "partial2tree",
            "--n",
            "12",
            "--seed",
            "5",
        ]);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
        assert!(WeightedGraph::parse(&a.1).is_ok());
    }

    #[test]
    fn lsc_oracle_flag_agrees_with_fast_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_graph(
            &dir,
            "k23.graph",
            "p 5 6\ne 0 2 1\ne 0 3 1\ne 0 4 1\ne 1 2 1\ne 1 3 1\ne 1 4 1\n",
        );
        let (code, fast, _) = run_cli(&["lsc", "--input", &path]);
        let (code_oracle, brute, _) = run_cli(&["lsc", "--input", &path, "--oracle"]);
        assert_eq!(code, 0);
        assert_eq!(code_oracle, 0);
        assert_eq!(fast, brute);
    }

    #[test]
    fn lsp_text_output() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_graph(
            &dir,
            "c4.graph",
            "p 4 4\ne 0 1 1\ne 1 2 1\ne 2 3 1\ne 0 3 1\n",
        );
        let (code, out, _) = run_cli(&["lsp", "--input", &path, "--source", "0", "--target", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "path: 0-1-2\nweight: 2\nlength: 2\n");
        let (code_oracle, out_oracle, _) = run_cli(&[
            "lsp", "--input", &path, "--source", "0", "--target", "2", "--oracle",
        ]);
        assert_eq!(code_oracle, 0);
        assert_eq!(out, out_oracle);
    }

    #[test]
    fn invalid_input_file_exits_1() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_graph(&dir, "bad.graph", "p 2 1\ne 0 0 5\n");
        let (code, _, err) = run_cli(&["mcb", "--input", &path]);
        assert_eq!(code, 1);
        assert!(err.contains("loop"), "{err}");
    }

    #[test]
    fn json_outputs_are_single_objects() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_graph(
            &dir,
            "k23.graph",
            "p 5 6\ne 0 2 1\ne 0 3 1\ne 0 4 1\ne 1 2 1\ne 1 3 1\ne 1 4 1\n",
        );
        for sub in ["mcb", "lsc", "check", "verify"] {
            let (code, out, _) = run_cli(&[sub, "--input", &path, "--format", "json"]);
            assert_eq!(code, 0, "{sub}");
            let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
            assert!(v.is_object(), "{sub} output is not an object");
        }
    }
}
