//! `algsieve`: run the randomized sieves and their brute-force oracles on
//! instance files. Reports go to standard output as JSON, diagnostics to
//! standard error. Exit status 0 on a completed run, 1 if `selftest` finds a
//! mismatch, 2 on bad input.

mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use algsieve::dimmatch::detect_qdim_packing;
use algsieve::edgecolor::{detect_edge_coloring, detect_edge_coloring_general};
use algsieve::io::{encode_graph_packing, format_family, parse_family, parse_graph, Family, PackingEncoding};
use algsieve::kpath::detect_k_path;
use algsieve::setpack::detect_set_packing;
use algsieve::{oracle, selftest, DetectOptions, Graph, PartiteFamily, SetFamily};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::{OracleReport, Params, RunReport, SelftestReport};

#[derive(Parser)]
#[command(name = "algsieve", version, about = "Randomized algebraic sieves for k-path, packing and edge colouring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Instance file; `-` reads standard input.
    #[arg(long)]
    input: PathBuf,
    /// Master seed; repetition i uses ChaCha8 stream i of this seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the repetition count.
    #[arg(long)]
    reps: Option<u64>,
    /// Force the field degree b of GF(2^b).
    #[arg(long)]
    field_bits: Option<u32>,
    /// Add elapsed_ms to the report (makes output time-dependent).
    #[arg(long)]
    time: bool,
}

impl RunArgs {
    fn options(&self) -> DetectOptions {
        DetectOptions { repetitions: self.reps, field_bits: self.field_bits }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Encoding {
    VertexTriangle,
    EdgeTriangle,
    VertexP3,
}

impl Encoding {
    fn mode(self) -> PackingEncoding {
        match self {
            Encoding::VertexTriangle => PackingEncoding::VertexTriangle,
            Encoding::EdgeTriangle => PackingEncoding::EdgeTriangle,
            Encoding::VertexP3 => PackingEncoding::VertexP3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Encoding::VertexTriangle => "vertex-triangle",
            Encoding::EdgeTriangle => "edge-triangle",
            Encoding::VertexP3 => "vertex-p3",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Kpath,
    Qdmatch,
    Setpack,
    Edgecolor,
}

#[derive(Subcommand)]
enum Command {
    /// Is there a simple path on k vertices? (graph file)
    Kpath {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        k: usize,
    },
    /// Are there p pairwise disjoint members? (partite family file)
    Qdmatch {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        p: usize,
        /// Expected member size; checked against the file.
        #[arg(long)]
        q: Option<usize>,
    },
    /// Are there p pairwise disjoint q-sets? (family file, or graph file with --encode)
    Setpack {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        p: usize,
        /// Expected member size; checked against the file.
        #[arg(long)]
        q: Option<usize>,
        /// Read a graph and pack the encoded subgraphs.
        #[arg(long, value_enum)]
        encode: Option<Encoding>,
    },
    /// Is the d-regular graph d-edge-colourable? (graph file)
    Edgecolor {
        #[command(flatten)]
        run: RunArgs,
        /// Ask whether any graph is Δ-edge-colourable.
        #[arg(long)]
        general: bool,
    },
    /// Exhaustive answer for small instances.
    Oracle {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Compare every sieve with its oracle on random small instances.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        instances: usize,
    },
    /// Print the set family encoding a graph packing problem.
    Encode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: Encoding,
    },
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

fn read_input(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_graph(path: &PathBuf) -> CliResult<Graph> {
    parse_graph(&read_input(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_family(path: &PathBuf) -> CliResult<Family> {
    parse_family(&read_input(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_plain(path: &PathBuf) -> CliResult<SetFamily> {
    match read_family(path)? {
        Family::Plain(f) => Ok(f),
        Family::Partite(_) => Err(InputError("setpack expects a plain \"n q\" family".into())),
    }
}

fn read_partite(path: &PathBuf) -> CliResult<PartiteFamily> {
    match read_family(path)? {
        Family::Partite(f) => Ok(f),
        Family::Plain(_) => Err(InputError("qdmatch expects a \"q r partite\" family".into())),
    }
}

fn check_q(expected: Option<usize>, actual: usize) -> CliResult<()> {
    match expected {
        Some(q) if q != actual => Err(InputError(format!("--q {q} does not match member size {actual}"))),
        _ => Ok(()),
    }
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn finish(mut report: RunReport, run: &RunArgs, start: Instant) -> CliResult<ExitCode> {
    if run.time {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    print_json(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn execute(command: Command) -> CliResult<ExitCode> {
    let start = Instant::now();
    match command {
        Command::Kpath { run, k } => {
            let graph = read_graph(&run.input)?;
            let detection = detect_k_path(&graph, k, run.seed, run.options())?;
            finish(RunReport::new("kpath", run.seed, detection), &run, start)
        }
        Command::Qdmatch { run, p, q } => {
            let family = read_partite(&run.input)?;
            check_q(q, family.dimensions())?;
            let detection = detect_qdim_packing(&family, p, run.seed, run.options())?;
            finish(RunReport::new("qdmatch", run.seed, detection), &run, start)
        }
        Command::Setpack { run, p, q, encode } => {
            let family = match encode {
                Some(mode) => encode_graph_packing(&read_graph(&run.input)?, mode.mode()),
                None => read_plain(&run.input)?,
            };
            check_q(q, family.member_size())?;
            let detection = detect_set_packing(&family, p, run.seed, run.options())?;
            let mut report = RunReport::new("setpack", run.seed, detection);
            if let (Params::Packing { encoding, .. }, Some(mode)) = (&mut report.params, encode) {
                *encoding = Some(mode.name().to_string());
            }
            finish(report, &run, start)
        }
        Command::Edgecolor { run, general } => {
            let graph = read_graph(&run.input)?;
            let detection = if general {
                detect_edge_coloring_general(&graph, run.seed, run.options())?
            } else {
                detect_edge_coloring(&graph, run.seed, run.options())?
            };
            finish(RunReport::new("edgecolor", run.seed, detection), &run, start)
        }
        Command::Oracle { problem, input, k, p } => {
            let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| InputError(format!("oracle needs {flag}")));
            let report = match problem {
                Problem::Kpath => {
                    OracleReport::new("kpath", "dfs", oracle::has_k_path_bf(&read_graph(&input)?, need(k, "--k")?))
                }
                Problem::Qdmatch => OracleReport::new(
                    "qdmatch",
                    "disjoint-tuple search",
                    oracle::has_qdim_packing_bf(&read_partite(&input)?, need(p, "--p")?),
                ),
                Problem::Setpack => OracleReport::new(
                    "setpack",
                    "branch and bound",
                    oracle::has_p_packing_bf(&read_plain(&input)?, need(p, "--p")?),
                ),
                Problem::Edgecolor => {
                    let graph = read_graph(&input)?;
                    let index = oracle::edge_chromatic_bf(&graph)?;
                    let delta = graph.max_degree();
                    let mut report = OracleReport::new("edgecolor", "backtracking", index == delta);
                    report.chromatic_index = Some(index);
                    report.max_degree = Some(delta);
                    report
                }
            };
            print_json(&report)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { seed, instances } => {
            let suites = selftest::run_all(instances, seed)?;
            let report = SelftestReport::new(seed, instances, &suites);
            print_json(&report)?;
            Ok(if report.failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Encode { input, mode } => {
            print!("{}", format_family(&encode_graph_packing(&read_graph(&input)?, mode.mode())));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(InputError(message)) => {
            eprintln!("algsieve: {message}");
            ExitCode::from(2)
        }
    }
}
