//! `smallworld` command-line front end.
//!
//! Exit codes: 0 ok, 2 input or parameter error, 3 degenerate graph.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, EXIT_INPUT};
use crate::graph::{Graph, GraphBuilder};
use crate::ingest::{ingest_path, write_edge_list, ExclusionList, Ingested, InputFormat, PreprocessLog};
use crate::metrics::{
    compute_report, degree_distribution, ClusteringPolicy, DensityMode, PathScope, PowerLawEstimator, ReportOptions,
    XMin,
};
use crate::null_models::{robustness_probe, small_world_index, GeneratorSpec, RobustnessStrategy};
use crate::report::{
    compare, graph_edge_pairs, to_json, write_degree_distribution, write_node_table, Binning, ReportDocument,
};

#[derive(Debug, Parser)]
#[command(
    name = "smallworld",
    version,
    about = "Small-world analysis of startup/investor networks"
)]
pub struct Cli {
    /// Worker threads for parallel kernels (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the network properties of one input and emit a JSON report.
    Stats(StatsArgs),
    /// Compare two saved reports side by side.
    Compare(CompareArgs),
    /// Write a seeded random graph as an edge list.
    Generate(GenerateArgs),
    /// Emit plot-ready degree distribution CSV.
    DegreeDist(DegreeDistArgs),
    /// Measure APL/clustering response to node removal.
    Robustness(RobustnessArgs),
    /// Export the cleaned graph for third-party tools.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Table,
    Edgelist,
}

impl From<FormatArg> for InputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => InputFormat::Table,
            FormatArg::Edgelist => InputFormat::Edgelist,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "edgelist")]
    pub format: FormatArg,
    /// Exclusion list: one label per line, `#` comments.
    #[arg(long)]
    pub exclude: Option<PathBuf>,
    /// Match labels case-insensitively.
    #[arg(long)]
    pub case_fold: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ScopeArg {
    Whole,
    Lcc,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PolicyArg {
    Include,
    Exclude,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DensityArg {
    Unipartite,
    Bipartite,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EstimatorArg {
    Exact,
    Continuity,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Network name recorded in the report (default: input file stem).
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, value_enum, default_value = "lcc")]
    pub scope: ScopeArg,
    #[arg(long, value_enum, default_value = "include")]
    pub clustering_policy: PolicyArg,
    #[arg(long, value_enum, default_value = "unipartite")]
    pub density_mode: DensityArg,
    /// Power-law threshold: `auto` or a positive integer.
    #[arg(long, default_value = "auto", value_parser = parse_xmin)]
    pub xmin: XMin,
    #[arg(long, value_enum, default_value = "exact")]
    pub estimator: EstimatorArg,
    /// Random baselines for the small-world verdict (0 skips it).
    #[arg(long, default_value_t = 0)]
    pub small_world_samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_xmin(s: &str) -> Result<XMin, String> {
    if s == "auto" {
        return Ok(XMin::Auto);
    }
    match s.parse::<u64>() {
        Ok(x) if x >= 1 => Ok(XMin::Fixed(x)),
        _ => Err(format!("expected `auto` or a positive integer, got {s:?}")),
    }
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub left: PathBuf,
    pub right: PathBuf,
    /// Write the comparison JSON here.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Print JSON to stdout instead of the text table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Er,
    Ws,
    Ba,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    /// Edge count (er).
    #[arg(long)]
    pub m: Option<usize>,
    /// Even lattice degree (ws).
    #[arg(long)]
    pub k: Option<usize>,
    /// Rewiring probability (ws).
    #[arg(long)]
    pub p: Option<f64>,
    /// Edges per arriving node (ba).
    #[arg(long)]
    pub m_attach: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BinningArg {
    Raw,
    Log2,
}

#[derive(Debug, Args)]
pub struct DegreeDistArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "raw")]
    pub binning: BinningArg,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Random,
    Hub,
}

#[derive(Debug, Args)]
pub struct RobustnessArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "random")]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 0.01)]
    pub fraction: f64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExportFormat {
    Edgelist,
    Nodetable,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long = "to", value_enum, default_value = "edgelist")]
    pub to: ExportFormat,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn warn_log(stage: &str, log: &PreprocessLog) {
    if log.dropped() > 0 {
        eprintln!("warning: {stage}: {log}");
    }
}

/// Reads, cleans and builds the graph named by `args`, reporting drops on stderr.
pub fn load_graph(args: &InputArgs) -> Result<(Graph, Ingested), Error> {
    let exclusions = match &args.exclude {
        Some(path) => ExclusionList::from_path(path)?,
        None => ExclusionList::default(),
    };
    let mut ingested = ingest_path(&args.input, args.format.into(), &exclusions)?;
    let graph = GraphBuilder::new()
        .case_fold(args.case_fold)
        .build(ingested.pairs.iter().map(|p| p.as_tuple()))?;
    ingested.settle_duplicates(graph.edge_count());
    if let Some(log) = &ingested.record_log {
        warn_log("records", log);
    }
    warn_log("pairs", &ingested.pair_log);
    Ok((graph, ingested))
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_owned(),
        source,
    }
}

/// Runs `write` against the output file, or stdout when no path is given.
fn with_output(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> Result<(), Error>) -> Result<(), Error> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(io_err(p))?);
            write(&mut w)?;
            w.flush().map_err(io_err(p))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
            lock.flush().map_err(io_err(Path::new("<stdout>")))
        }
    }
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), Error> {
    with_output(path, |w| {
        w.write_all(text.as_bytes())
            .map_err(io_err(path.unwrap_or(Path::new("<stdout>"))))
    })
}

fn csv_to_error(path: Option<&Path>) -> impl Fn(csv::Error) -> Error + '_ {
    move |e| Error::Io {
        path: path.unwrap_or(Path::new("<stdout>")).to_owned(),
        source: e.into(),
    }
}

pub fn cmd_stats(args: &StatsArgs) -> Result<(), Error> {
    let (graph, ingested) = load_graph(&args.input)?;
    let options = ReportOptions {
        scope: match args.scope {
            ScopeArg::Whole => PathScope::WholeGraph,
            ScopeArg::Lcc => PathScope::LargestComponent,
        },
        clustering_policy: match args.clustering_policy {
            PolicyArg::Include => ClusteringPolicy::IncludeLowDegreeAsZero,
            PolicyArg::Exclude => ClusteringPolicy::ExcludeLowDegree,
        },
        density_mode: match args.density_mode {
            DensityArg::Unipartite => DensityMode::Unipartite,
            DensityArg::Bipartite => DensityMode::Bipartite,
        },
        xmin: args.xmin,
        estimator: match args.estimator {
            EstimatorArg::Exact => PowerLawEstimator::ExactDiscrete,
            EstimatorArg::Continuity => PowerLawEstimator::ContinuityCorrected,
        },
        parallel: true,
    };
    let mut metrics = compute_report(&graph, &options)?;
    if args.small_world_samples > 0 {
        metrics.small_world = Some(small_world_index(&graph, args.small_world_samples, args.seed)?);
    }
    let name = args.name.clone().unwrap_or_else(|| {
        args.input
            .input
            .file_stem()
            .map_or_else(|| "network".to_owned(), |s| s.to_string_lossy().into_owned())
    });
    let mut doc = ReportDocument::new(name, metrics);
    doc.record_log = ingested.record_log;
    doc.pair_log = Some(ingested.pair_log);
    write_text(args.output.as_deref(), &to_json(&doc))
}

pub fn cmd_compare(args: &CompareArgs) -> Result<(), Error> {
    let left = ReportDocument::read(&args.left)?;
    let right = ReportDocument::read(&args.right)?;
    let cmp = compare(&left, &right);
    if cmp.narrative_flags.iter().any(|f| f.ends_with("_mismatch")) {
        eprintln!("warning: reports were computed with different options");
    }
    let json = to_json(&cmp);
    if let Some(path) = &args.output {
        write_text(Some(path), &json)?;
    }
    if args.json {
        write_text(None, &json)
    } else {
        write_text(None, &cmp.render_table())
    }
}

fn require<T>(value: Option<T>, flag: &str, kind: &str) -> Result<T, Error> {
    value.ok_or_else(|| Error::Usage(format!("--{flag} is required for --kind {kind}")))
}

pub fn generator_spec(args: &GenerateArgs) -> Result<GeneratorSpec, Error> {
    let (n, seed) = (args.n, args.seed);
    Ok(match args.kind {
        KindArg::Er => GeneratorSpec::Er {
            n,
            m: require(args.m, "m", "er")?,
            seed,
        },
        KindArg::Ws => GeneratorSpec::Ws {
            n,
            k: require(args.k, "k", "ws")?,
            p: require(args.p, "p", "ws")?,
            seed,
        },
        KindArg::Ba => GeneratorSpec::Ba {
            n,
            m_attach: require(args.m_attach, "m-attach", "ba")?,
            seed,
        },
    })
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<(), Error> {
    let spec = generator_spec(args)?;
    let graph = spec.generate()?;
    let isolated = graph.degrees().iter().filter(|&&d| d == 0).count();
    if isolated > 0 {
        eprintln!("warning: {isolated} isolated nodes cannot be represented in an edge list");
    }
    let pairs = graph_edge_pairs(&graph);
    let path = args.output.as_deref();
    with_output(path, |w| Ok(write_edge_list(w, &pairs)?))
}

pub fn cmd_degree_dist(args: &DegreeDistArgs) -> Result<(), Error> {
    let (graph, _) = load_graph(&args.input)?;
    let dist = degree_distribution(&graph)?;
    let binning = match args.binning {
        BinningArg::Raw => Binning::Raw,
        BinningArg::Log2 => Binning::Log2,
    };
    let path = args.output.as_deref();
    with_output(path, |w| {
        write_degree_distribution(&dist, binning, w).map_err(csv_to_error(path))
    })
}

pub fn cmd_robustness(args: &RobustnessArgs) -> Result<(), Error> {
    let strategy = match args.strategy {
        StrategyArg::Random => RobustnessStrategy::Random,
        StrategyArg::Hub => RobustnessStrategy::Hub,
    };
    // validate before the (possibly expensive) load
    if !(args.fraction > 0.0 && args.fraction < 1.0) || args.trials == 0 {
        return Err(Error::Usage(format!(
            "need 0 < fraction < 1 and trials >= 1 (fraction={}, trials={})",
            args.fraction, args.trials
        )));
    }
    let (graph, _) = load_graph(&args.input)?;
    let result = robustness_probe(&graph, strategy, args.fraction, args.trials, args.seed)?;
    write_text(args.output.as_deref(), &to_json(&result))
}

pub fn cmd_export(args: &ExportArgs) -> Result<(), Error> {
    let (graph, _) = load_graph(&args.input)?;
    let path = args.output.as_deref();
    match args.to {
        ExportFormat::Edgelist => with_output(path, |w| Ok(write_edge_list(w, &graph_edge_pairs(&graph))?)),
        ExportFormat::Nodetable => with_output(path, |w| write_node_table(&graph, w).map_err(csv_to_error(path))),
    }
}

pub fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Stats(a) => cmd_stats(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Generate(a) => cmd_generate(a),
        Command::DegreeDist(a) => cmd_degree_dist(a),
        Command::Robustness(a) => cmd_robustness(a),
        Command::Export(a) => cmd_export(a),
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("warning: could not size thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
