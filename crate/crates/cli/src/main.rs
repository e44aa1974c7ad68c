use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sepforge_core::oracle::{run_suite, SUITES};
use sepforge_core::{
    automorphisms, block_profiles, build_tree_of_tds, canonical_td_fixed_k, distinguishes_efficiently,
    enumerate_k_blocks, enumerate_tangles, fixtures, glue_tree_of_tds, induced_separations, lambda, load_graph,
    set_max_vertices, verify_td, Error, Format, Graph, Profile, Separation, TreeDecomposition,
};

#[derive(Parser)]
#[command(name = "sepforge", version, about = "Separations, tangles and canonical tree-decompositions of small graphs")]
struct Cli {
    /// Treat graph arguments as file paths even when they name a built-in fixture.
    #[arg(long, global = true)]
    file: bool,
    /// Vertex cap (defaults to SEPFORGE_MAX_VERTICES, then 16; at most 24).
    #[arg(long, global = true)]
    max_vertices: Option<usize>,
    /// Largest separation order a command may enumerate.
    #[arg(long, global = true)]
    max_order: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    FixedK,
    Totd,
    Glued,
}

#[derive(Subcommand)]
enum Command {
    /// List the tangles of order k.
    Tangles {
        graph: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// List the k-blocks.
    Blocks {
        graph: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Build a canonical decomposition distinguishing a profile set.
    Decompose {
        graph: String,
        #[arg(long, value_enum, default_value = "glued")]
        mode: Mode,
        /// `tangles:K`, `blocks:K` or `file:PATH`.
        #[arg(long)]
        profiles: String,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Check a tree-decomposition, and optionally that it distinguishes profiles efficiently.
    Verify {
        graph: String,
        decomposition: PathBuf,
        #[arg(long)]
        profiles: Option<String>,
    },
    /// Check that a decomposition or separation list is fixed by every automorphism.
    Canonicity { graph: String, object: PathBuf },
    /// Run an exhaustive property suite on a graph.
    Oracle {
        graph: String,
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        check: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the graph itself.
    Export {
        graph: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: OutputFormat,
    },
}

enum Failure {
    Usage(String),
    Capacity(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            Error::LemmaViolation(_) | Error::Internal(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn resolve_graph(name: &str, force_file: bool) -> Result<Graph, Failure> {
    let path = Path::new(name);
    if !force_file {
        if let Some(g) = fixtures::by_name(name) {
            if path.exists() {
                return Err(Failure::Usage(format!(
                    "{name:?} is both a fixture and a file; pass --file to read the file"
                )));
            }
            return Ok(g);
        }
    }
    let data = std::fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {name}: {e}")))?;
    let format = if path.extension().is_some_and(|e| e == "json") { Format::Json } else { Format::EdgeList };
    Ok(load_graph(&data, format)?.with_name(name))
}

fn check_order(k: usize, cap: Option<usize>) -> Result<(), Failure> {
    match cap {
        Some(m) if k > m + 1 => Err(Failure::Capacity(format!(
            "order {k} needs separations of order {} above --max-order {m}",
            k - 1
        ))),
        _ => Ok(()),
    }
}

fn load_profiles(g: &Graph, source: &str, cap: Option<usize>) -> Result<Vec<Profile>, Failure> {
    let (kind, arg) = source
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("profile source {source:?} is not of the form kind:value")))?;
    let order = || arg.parse::<usize>().map_err(|_| Failure::Usage(format!("{arg:?} is not an order")));
    match kind {
        "tangles" => {
            let k = order()?;
            check_order(k, cap)?;
            Ok(enumerate_tangles(g, k)?)
        }
        "blocks" => {
            let k = order()?;
            check_order(k, cap)?;
            Ok(block_profiles(g, k)?)
        }
        "file" => {
            let data = std::fs::read(arg).map_err(|e| Failure::Usage(format!("cannot read {arg}: {e}")))?;
            serde_json::from_slice(&data).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
        }
        other => Err(Failure::Usage(format!("unknown profile source {other:?}"))),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize") + "\n"
}

fn td_text(td: &TreeDecomposition) -> String {
    let mut out = String::new();
    for (i, p) in td.parts.iter().enumerate() {
        out.push_str(&format!("part {i}: {p:?}\n"));
    }
    for &(u, v) in &td.edges {
        out.push_str(&format!("edge {u}-{v}: {:?}\n", td.parts[u] & td.parts[v]));
    }
    out
}

fn render_td(td: &TreeDecomposition, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(td),
        OutputFormat::Dot => td.to_dot(),
        OutputFormat::Text => td_text(td),
    }
}

fn profiles_text(ps: &[Profile]) -> String {
    let mut out = format!("{} profile(s)\n", ps.len());
    for (i, p) in ps.iter().enumerate() {
        out.push_str(&format!("profile {i}: bound {}, {} oriented separations\n", p.bound, p.len()));
    }
    out
}

#[derive(Serialize)]
struct VerifyReport {
    ok: bool,
    axioms: sepforge_core::TdReport,
    undistinguished: Vec<(usize, usize)>,
}

fn verify(g: &Graph, path: &Path, profiles: Option<Vec<Profile>>) -> Outcome {
    let data = std::fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let td: TreeDecomposition =
        serde_json::from_slice(&data).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let axioms = verify_td(g, &td)?;
    let seps = induced_separations(&td);
    let mut undistinguished = Vec::new();
    if let Some(ps) = &profiles {
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                if lambda(&ps[i], &ps[j]).is_some()
                    && !seps.iter().any(|&s| distinguishes_efficiently(s, &ps[i], &ps[j]))
                {
                    undistinguished.push((i, j));
                }
            }
        }
    }
    let report = VerifyReport {
        ok: axioms.ok() && undistinguished.is_empty(),
        axioms,
        undistinguished,
    };
    let text = json(&report);
    if report.ok {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

#[derive(Serialize)]
struct CanonicityReport {
    ok: bool,
    automorphisms: usize,
    moved_by: Vec<Vec<usize>>,
}

fn canonicity(g: &Graph, path: &Path) -> Outcome {
    let data = std::fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let seps: BTreeSet<Separation> = match serde_json::from_slice::<TreeDecomposition>(&data) {
        Ok(td) => induced_separations(&td),
        Err(_) => serde_json::from_slice::<Vec<Separation>>(&data)
            .map_err(|e| Failure::Usage(format!("{}: neither a decomposition nor a separation list: {e}", path.display())))?
            .into_iter()
            .collect(),
    };
    let auts = automorphisms(g)?;
    let moved_by: Vec<Vec<usize>> = auts
        .iter()
        .filter(|phi| seps.iter().map(|s| s.map(phi)).collect::<BTreeSet<_>>() != seps)
        .map(|phi| phi.images().to_vec())
        .collect();
    let report = CanonicityReport {
        ok: moved_by.is_empty(),
        automorphisms: auts.len(),
        moved_by,
    };
    let text = json(&report);
    if report.ok {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn graph_dot(g: &Graph) -> String {
    let mut out = String::from("graph g {\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

fn run(cli: Cli) -> Outcome {
    let cap = match cli.max_vertices {
        Some(c) => Some(c),
        None => match std::env::var("SEPFORGE_MAX_VERTICES") {
            Ok(v) => Some(
                v.parse()
                    .map_err(|_| Failure::Usage(format!("SEPFORGE_MAX_VERTICES={v:?} is not a number")))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(c) = cap {
        set_max_vertices(c)?;
    }
    let file = cli.file;
    let max_order = cli.max_order;
    match cli.command {
        Command::Tangles { graph, k, format } => {
            let g = resolve_graph(&graph, file)?;
            check_order(k, max_order)?;
            let ts = enumerate_tangles(&g, k)?;
            Ok(match format {
                OutputFormat::Text => profiles_text(&ts),
                _ => json(&ts),
            })
        }
        Command::Blocks { graph, k, format } => {
            let g = resolve_graph(&graph, file)?;
            check_order(k, max_order)?;
            let bs = enumerate_k_blocks(&g, k)?;
            Ok(match format {
                OutputFormat::Text => bs.iter().map(|b| format!("{b:?}\n")).collect(),
                _ => json(&bs),
            })
        }
        Command::Decompose { graph, mode, profiles, format } => {
            let g = resolve_graph(&graph, file)?;
            let ps = load_profiles(&g, &profiles, max_order)?;
            match mode {
                Mode::FixedK => Ok(render_td(&canonical_td_fixed_k(&g, &ps)?, format)),
                Mode::Glued => {
                    let totd = build_tree_of_tds(&g, &ps)?;
                    Ok(render_td(&glue_tree_of_tds(&g, &totd, &ps)?, format))
                }
                Mode::Totd => {
                    let totd = build_tree_of_tds(&g, &ps)?;
                    Ok(match format {
                        OutputFormat::Json => json(&totd),
                        OutputFormat::Dot => totd.to_dot(),
                        OutputFormat::Text => totd
                            .nodes
                            .iter()
                            .enumerate()
                            .map(|(i, n)| {
                                format!("node {i} level {}: {} part(s), {} profile(s)\n", n.level, n.td.node_count(), n.profiles.len())
                            })
                            .collect(),
                    })
                }
            }
        }
        Command::Verify { graph, decomposition, profiles } => {
            let g = resolve_graph(&graph, file)?;
            let ps = profiles.map(|p| load_profiles(&g, &p, max_order)).transpose()?;
            verify(&g, &decomposition, ps)
        }
        Command::Canonicity { graph, object } => {
            let g = resolve_graph(&graph, file)?;
            canonicity(&g, &object)
        }
        Command::Oracle { graph, check, seed } => {
            let g = resolve_graph(&graph, file)?;
            let report = run_suite(&g, &check, max_order.unwrap_or(3), seed)?;
            let text = json(&report);
            if report.ok() {
                Ok(text)
            } else {
                Err(Failure::Verification(text))
            }
        }
        Command::Export { graph, format } => {
            let g = resolve_graph(&graph, file)?;
            Ok(match format {
                OutputFormat::Dot => graph_dot(&g),
                OutputFormat::Json => json(&g),
                OutputFormat::Text => g.edges().map(|(u, v)| format!("{u} {v}\n")).collect(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
