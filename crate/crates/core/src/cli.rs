//! Command-line front end shared by the `lhz` binary and the tests.
//!
//! Exit codes: 0 success, 1 usage error, 2 runtime error (capacity,
//! inconsistent evidence, failed sweep cells).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::channel::NoiseModel;
use crate::codes::{bit_string, num_pairs, PhysicalWord};
use crate::decoders::{DecoderConfig, DecoderKind, LhzDecoder, Schedule};
use crate::error::Error;
use crate::factor_graph::GraphKind;
use crate::report::{format_sig6, write_bound_csv, write_csv, write_jsonl, BoundRow, OutputRow};
use crate::sim::{run_sweep, SimConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lhz", about = "Decode and simulate the LHZ pairwise-parity code")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a factor graph
    Graph(GraphArgs),
    /// Decode one noisy readout
    Decode(DecodeArgs),
    /// Run a Monte Carlo sweep
    Simulate(SimulateArgs),
    /// Tabulate the Chernoff and union bounds
    Bound(BoundArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphArg {
    Triangle,
    Planar,
    Hamming,
}

impl From<GraphArg> for GraphKind {
    fn from(g: GraphArg) -> Self {
        match g {
            GraphArg::Triangle => GraphKind::Triangle,
            GraphArg::Planar => GraphKind::Planar,
            GraphArg::Hamming => GraphKind::Hamming,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LhzGraphArg {
    Triangle,
    Planar,
}

impl From<LhzGraphArg> for GraphKind {
    fn from(g: LhzGraphArg) -> Self {
        match g {
            LhzGraphArg::Triangle => GraphKind::Triangle,
            LhzGraphArg::Planar => GraphKind::Planar,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DecoderArg {
    Majority,
    Bp,
    Mle,
}

impl From<DecoderArg> for DecoderKind {
    fn from(d: DecoderArg) -> Self {
        match d {
            DecoderArg::Majority => DecoderKind::Majority,
            DecoderArg::Bp => DecoderKind::Bp,
            DecoderArg::Mle => DecoderKind::Mle,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScheduleArg {
    Paper,
    Extrinsic,
    Accumulate,
}

impl From<ScheduleArg> for Schedule {
    fn from(s: ScheduleArg) -> Self {
        match s {
            ScheduleArg::Paper => Schedule::PaperLiteral,
            ScheduleArg::Extrinsic => Schedule::Extrinsic,
            ScheduleArg::Accumulate => Schedule::Accumulate,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TextFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
struct GraphArgs {
    #[arg(long, value_enum)]
    kind: GraphArg,
    /// Number of logical bits (ignored for hamming)
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: TextFormat,
}

#[derive(Debug, Args)]
struct DecodeArgs {
    /// Observed physical bits in pair order, e.g. 000001
    #[arg(long)]
    word: String,
    /// Number of logical bits; inferred from the word length if omitted
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "eps", default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, value_enum, default_value = "bp")]
    decoder: DecoderArg,
    #[arg(long, default_value_t = 5)]
    iters: usize,
    #[arg(long, value_enum, default_value = "paper")]
    schedule: ScheduleArg,
    #[arg(long, value_enum, default_value = "triangle")]
    graph: LhzGraphArg,
    /// Count the readout of the pair itself as one more majority vote
    #[arg(long)]
    include_direct: bool,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Sizes: list and inclusive ranges, e.g. 2..40 or 4,8,16
    #[arg(long = "n")]
    ns: String,
    /// Flip probabilities, comma separated
    #[arg(long = "eps")]
    epsilons: String,
    #[arg(long, default_value_t = 5000)]
    trials: u64,
    /// One or more decoders, comma separated
    #[arg(long, value_enum, value_delimiter = ',', default_value = "bp")]
    decoder: Vec<DecoderArg>,
    #[arg(long, default_value_t = 5)]
    iters: usize,
    #[arg(long, value_enum, default_value = "paper")]
    schedule: ScheduleArg,
    #[arg(long, value_enum, default_value = "triangle")]
    graph: LhzGraphArg,
    /// Master seed; drawn at random and reported if omitted
    #[arg(long)]
    seed: Option<u64>,
    /// Give every decoder the same noise realizations
    #[arg(long)]
    shared_noise: bool,
    /// Encode the all-zero logical word in every trial
    #[arg(long)]
    all_zero: bool,
    #[arg(long)]
    include_direct: bool,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long = "n")]
    ns: String,
    #[arg(long = "eps")]
    epsilons: String,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } | Error::InconsistentEvidence { .. } => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Runtime(format!("io: {e}"))
}

/// Parses `2..40`, `4,8,16` or mixtures such as `2..5,10`.
pub fn parse_size_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad size {x:?} in {s:?}"));
        match part.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
                if lo > hi {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(parse(part)?),
        }
    }
    Ok(out)
}

pub fn parse_epsilon_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let e: f64 = p.parse().map_err(|_| format!("bad epsilon {p:?}"))?;
            NoiseModel::new(e).map_err(|err| err.to_string())?;
            Ok(e)
        })
        .collect()
}

#[derive(Serialize)]
struct GraphDoc<'a> {
    kind: GraphKind,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    n_vars: usize,
    checks: &'a [Vec<usize>],
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [(usize, usize)]>,
}

fn cmd_graph(args: &GraphArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let kind = GraphKind::from(args.kind);
    let graph = kind.build(args.n)?;
    let labels = graph.labels().map(|l| l.pairs());
    let n = labels.map(|_| args.n);
    match args.format {
        TextFormat::Json => {
            let doc = GraphDoc {
                kind,
                n,
                n_vars: graph.n_vars(),
                checks: graph.checks(),
                labels,
            };
            let text = serde_json::to_string(&doc).map_err(|e| Failure::Runtime(e.to_string()))?;
            writeln!(out, "{text}").map_err(io_failure)?;
        }
        TextFormat::Text => {
            match n {
                Some(n) => writeln!(out, "# {kind} graph, N = {n}"),
                None => writeln!(out, "# {kind} graph"),
            }
            .map_err(io_failure)?;
            writeln!(out, "n_vars {}", graph.n_vars()).map_err(io_failure)?;
            writeln!(out, "checks {}", graph.n_checks()).map_err(io_failure)?;
            for (c, check) in graph.checks().iter().enumerate() {
                let vars: Vec<String> = check.iter().map(|v| v.to_string()).collect();
                let mut line = format!("{c}: {}", vars.join(" "));
                if let Some(labels) = labels {
                    let pairs: Vec<String> = check
                        .iter()
                        .map(|&v| format!("({},{})", labels[v].0, labels[v].1))
                        .collect();
                    line.push_str(&format!(" | {}", pairs.join(" ")));
                }
                writeln!(out, "{line}").map_err(io_failure)?;
            }
        }
    }
    Ok(())
}

fn infer_n(k: usize) -> Option<usize> {
    (2..=4096).find(|&n| num_pairs(n) == k)
}

fn cmd_decode(args: &DecodeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let n = match args.n {
        Some(n) => n,
        None => infer_n(args.word.len())
            .ok_or_else(|| Failure::Usage(format!("word length {} is not N(N-1)/2", args.word.len())))?,
    };
    let g = PhysicalWord::parse(n, &args.word)?;
    let model = NoiseModel::new(args.epsilon)?;
    let config = DecoderConfig {
        kind: args.decoder.into(),
        iterations: args.iters,
        schedule: args.schedule.into(),
        graph: args.graph.into(),
        include_direct: args.include_direct,
    };
    let decoder = LhzDecoder::new(&config, n, model)?;
    let outcome = decoder.decode(&g)?;

    let mut text = String::new();
    text.push_str(&format!("decoder: {}\n", config.kind));
    text.push_str(&format!("N: {n}\n"));
    text.push_str(&format!("epsilon: {}\n", format_sig6(model.epsilon())));
    text.push_str(&format!("consecutive: {}\n", bit_string(&outcome.consecutive)));
    text.push_str(&format!("logical: {}\n", outcome.logical()));
    text.push_str(&format!("word: {}\n", outcome.word));
    text.push_str(&format!("iterations: {}\n", outcome.iterations));
    text.push_str(&format!("converged: {}\n", outcome.converged));
    if outcome.degenerate {
        text.push_str("degenerate: true\n");
    }
    if let Some(beliefs) = &outcome.beliefs {
        text.push_str("beliefs:\n");
        let map = crate::codes::PairIndexMap::new(n);
        for (&(i, j), b) in map.pairs().iter().zip(beliefs.iter()) {
            text.push_str(&format!("  ({i},{j}) {} {}\n", format_sig6(b.p0()), format_sig6(b.p1())));
        }
    }
    out.write_all(text.as_bytes()).map_err(io_failure)
}

fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let ns = parse_size_list(&args.ns).map_err(Failure::Usage)?;
    let epsilons = parse_epsilon_list(&args.epsilons).map_err(Failure::Usage)?;
    let seed = match args.seed {
        Some(s) => s,
        None => {
            let s = rand::random::<u64>();
            writeln!(err, "seed: {s}").map_err(io_failure)?;
            s
        }
    };
    let config = SimConfig {
        ns,
        epsilons,
        trials: args.trials,
        decoders: args.decoder.iter().map(|&d| d.into()).collect(),
        iterations: args.iters,
        schedule: args.schedule.into(),
        include_direct: args.include_direct,
        graph: args.graph.into(),
        seed,
        shared_noise: args.shared_noise,
        all_zero: args.all_zero,
        threads: args.threads,
    };
    config.validate().map_err(|e| Failure::Usage(e.to_string()))?;

    // open the output before computing so a bad path fails fast
    let mut file_out;
    let sink: &mut dyn Write = match &args.out {
        Some(path) => {
            file_out = BufWriter::new(
                File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
            );
            &mut file_out
        }
        None => out,
    };

    let result = run_sweep(&config)?;
    let rows: Vec<OutputRow> = result.results().map(OutputRow::from_cell).collect();
    match args.format {
        TableFormat::Csv => write_csv(&rows, &mut *sink)?,
        TableFormat::Jsonl => write_jsonl(&rows, &mut *sink)?,
    }
    sink.flush().map_err(io_failure)?;

    let mut failed = 0;
    for e in result.errors() {
        failed += 1;
        writeln!(
            err,
            "cell decoder={} N={} epsilon={} failed: {}",
            e.spec.decoder.kind, e.spec.n, e.spec.epsilon, e.error
        )
        .map_err(io_failure)?;
    }
    if failed > 0 {
        return Err(Failure::Runtime(format!("{failed} cell(s) failed")));
    }
    Ok(())
}

fn cmd_bound(args: &BoundArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let ns = parse_size_list(&args.ns).map_err(Failure::Usage)?;
    let epsilons = parse_epsilon_list(&args.epsilons).map_err(Failure::Usage)?;
    let mut rows = Vec::with_capacity(ns.len() * epsilons.len());
    for &n in &ns {
        if n < 2 {
            return Err(Failure::Usage(format!("N = {n} is below 2")));
        }
        for &e in &epsilons {
            rows.push(BoundRow::new(n, &NoiseModel::new(e)?));
        }
    }
    write_bound_csv(&rows, out)?;
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Graph(a) => cmd_graph(a, out),
        Command::Decode(a) => cmd_decode(a, out),
        Command::Simulate(a) => cmd_simulate(a, out, err),
        Command::Bound(a) => cmd_bound(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_RUNTIME
        }
    }
}
