//! Command-line front-end: dataset statistics, centrality rankings,
//! disruption simulation, and multi-metric comparison.
//!
//! Machine-readable output goes to `--output` (or stdout); diagnostics and
//! summaries go to stderr. Exit codes: 0 success, 2 usage error, 3 dataset
//! parse error, 4 numeric divergence, 5 I/O error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::centrality::{self, CentralityError, Metric};
use crate::dataset::{self, DatasetError};
use crate::disruption::{self, DisruptionError, Strategy, RHO_COLLAPSE_THRESHOLD};
use crate::graph::{Graph, WeightMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_DIVERGENCE: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "netdisrupt",
    version,
    about = "Centrality metrics and node-removal disruption simulation for undirected weighted networks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print summary statistics of an edge-list dataset
    Stats {
        #[command(flatten)]
        common: CommonArgs,
        /// Output format
        #[arg(long, value_enum, default_value = "text")]
        format: StatsFormat,
    },
    /// Rank nodes by a centrality metric
    Centrality {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        metric: MetricArgs,
        /// Output format
        #[arg(long, value_enum, default_value = "csv")]
        format: TraceFormat,
    },
    /// Simulate a node-removal attack and export the rho trace
    Disrupt {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        metric: MetricArgs,
        #[command(flatten)]
        strategy: StrategyArgs,
        /// Output format
        #[arg(long, value_enum, default_value = "csv")]
        format: TraceFormat,
    },
    /// Run several metrics under one strategy and align their rho curves
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        /// Metrics to compare (repeat the flag; at least two)
        #[arg(long = "metric", value_enum, required = true, num_args = 1..)]
        metrics: Vec<MetricName>,
        #[command(flatten)]
        params: MetricParams,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Edge-list CSV dataset
    #[arg(long)]
    dataset: PathBuf,
    /// Weighting mode
    #[arg(long, value_enum, default_value = "unweighted")]
    mode: ModeArg,
    /// Write output here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MetricArgs {
    /// Centrality metric
    #[arg(long, value_enum)]
    metric: MetricName,
    #[command(flatten)]
    params: MetricParams,
}

#[derive(Args, Debug)]
struct MetricParams {
    /// Katz attenuation factor
    #[arg(long, default_value_t = 0.1)]
    katz_alpha: f64,
    /// Katz base score
    #[arg(long, default_value_t = 1.0)]
    katz_beta: f64,
    /// Collective-influence ball radius
    #[arg(long, default_value_t = 2)]
    ci_radius: usize,
}

#[derive(Args, Debug)]
struct StrategyArgs {
    /// Removal strategy
    #[arg(long, value_enum, default_value = "sequential")]
    strategy: StrategyName,
    /// Nodes removed per iteration under the block strategy
    #[arg(long, default_value_t = 5)]
    block_size: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Unweighted,
    Weighted,
}

impl From<ModeArg> for WeightMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Unweighted => WeightMode::Unweighted,
            ModeArg::Weighted => WeightMode::Weighted,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MetricName {
    Degree,
    Betweenness,
    Katz,
    Ci,
}

impl MetricName {
    fn build(self, params: &MetricParams) -> Metric {
        match self {
            MetricName::Degree => Metric::Degree,
            MetricName::Betweenness => Metric::Betweenness,
            MetricName::Katz => Metric::Katz {
                alpha: params.katz_alpha,
                beta: params.katz_beta,
            },
            MetricName::Ci => Metric::CollectiveInfluence {
                radius: params.ci_radius,
            },
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyName {
    Sequential,
    Block,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StatsFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TraceFormat {
    Csv,
    Json,
}

impl StrategyArgs {
    fn build(&self) -> Result<Strategy, CliError> {
        match self.strategy {
            StrategyName::Sequential => Ok(Strategy::Sequential),
            StrategyName::Block => {
                if self.block_size < 1 {
                    return Err(CliError::Usage("--block-size must be at least 1".into()));
                }
                Ok(Strategy::Block {
                    block_size: self.block_size,
                })
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Disruption(#[from] DisruptionError),
    #[error(transparent)]
    Centrality(#[from] CentralityError),
    #[error("cannot write output: {0}")]
    OutputIo(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Dataset(DatasetError::Io { .. }) => EXIT_IO,
            CliError::Dataset(_) => EXIT_PARSE,
            CliError::Centrality(_) => EXIT_DIVERGENCE,
            CliError::Disruption(DisruptionError::Centrality { .. }) => EXIT_DIVERGENCE,
            CliError::Disruption(_) => EXIT_USAGE,
            CliError::OutputIo(_) => EXIT_IO,
        }
    }
}

/// Parses arguments from the environment and runs the command.
/// Returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors.
            e.exit();
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Stats { common, format } => cmd_stats(&common, format),
        Command::Centrality {
            common,
            metric,
            format,
        } => cmd_centrality(&common, &metric, format),
        Command::Disrupt {
            common,
            metric,
            strategy,
            format,
        } => cmd_disrupt(&common, &metric, &strategy, format),
        Command::Compare {
            common,
            metrics,
            params,
            strategy,
        } => cmd_compare(&common, &metrics, &params, &strategy),
    }
}

fn load(common: &CommonArgs) -> Result<Graph, CliError> {
    Ok(dataset::load_edge_list(&common.dataset)?)
}

fn emit(common: &CommonArgs, content: &str) -> Result<(), CliError> {
    match &common.output {
        Some(path) => std::fs::write(path, content).map_err(CliError::OutputIo),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(CliError::OutputIo),
    }
}

fn cmd_stats(common: &CommonArgs, format: StatsFormat) -> Result<(), CliError> {
    let g = load(common)?;
    let stats = dataset::compute_stats(&g);
    let rendered = match format {
        StatsFormat::Text => format!("{stats}\n"),
        StatsFormat::Json => format!("{}\n", serde_json::to_string_pretty(&stats).unwrap()),
    };
    emit(common, &rendered)
}

fn cmd_centrality(
    common: &CommonArgs,
    metric: &MetricArgs,
    format: TraceFormat,
) -> Result<(), CliError> {
    let g = load(common)?;
    let built = metric.metric.build(&metric.params);
    let scores = centrality::compute(&g, &built, common.mode.into())?;
    let ranked = centrality::rank_nodes(&scores);
    let rendered = match format {
        TraceFormat::Csv => {
            let mut out = String::from("node,score\n");
            for id in &ranked {
                out.push_str(&format!("{id},{}\n", scores.scores[id]));
            }
            out
        }
        TraceFormat::Json => {
            let rows: Vec<serde_json::Value> = ranked
                .iter()
                .map(|id| serde_json::json!({ "id": id.0, "score": scores.scores[id] }))
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&rows).unwrap())
        }
    };
    emit(common, &rendered)
}

fn cmd_disrupt(
    common: &CommonArgs,
    metric: &MetricArgs,
    strategy: &StrategyArgs,
    format: TraceFormat,
) -> Result<(), CliError> {
    let g = load(common)?;
    let built = metric.metric.build(&metric.params);
    let run = disruption::run_disruption(&g, &built, common.mode.into(), strategy.build()?)?;
    let rendered = match format {
        TraceFormat::Csv => dataset::render_run_csv(&run),
        TraceFormat::Json => {
            let checksum = dataset::file_checksum(&common.dataset)?;
            dataset::render_run_json(&run, Some(&checksum))
        }
    };
    emit(common, &rendered)?;
    match run.first_reach(RHO_COLLAPSE_THRESHOLD) {
        Some(iteration) => eprintln!(
            "rho <= {RHO_COLLAPSE_THRESHOLD} first reached at iteration {iteration} \
             (rho = {:.6})",
            run.rho_at(iteration)
        ),
        None => eprintln!("rho never dropped to {RHO_COLLAPSE_THRESHOLD}"),
    }
    Ok(())
}

fn cmd_compare(
    common: &CommonArgs,
    metrics: &[MetricName],
    params: &MetricParams,
    strategy: &StrategyArgs,
) -> Result<(), CliError> {
    if metrics.len() < 2 {
        return Err(CliError::Usage(
            "compare needs at least two --metric flags".into(),
        ));
    }
    let g = load(common)?;
    let strategy = strategy.build()?;
    let mode = common.mode.into();
    let runs: Vec<_> = metrics
        .iter()
        .map(|m| disruption::run_disruption(&g, &m.build(params), mode, strategy))
        .collect::<Result<_, _>>()?;
    let table = disruption::compare_runs(&runs)?;

    let mut out = String::from("iteration");
    for label in &table.labels {
        out.push(',');
        out.push_str(label);
    }
    out.push('\n');
    for (i, row) in table.rows.iter().enumerate() {
        out.push_str(&i.to_string());
        for rho in row {
            out.push_str(&format!(",{rho:.6}"));
        }
        out.push('\n');
    }
    emit(common, &out)?;
    for (label, first) in table.labels.iter().zip(&table.first_collapse) {
        match first {
            Some(iteration) => eprintln!(
                "{label}: rho <= {RHO_COLLAPSE_THRESHOLD} first reached at iteration {iteration}"
            ),
            None => eprintln!("{label}: rho never dropped to {RHO_COLLAPSE_THRESHOLD}"),
        }
    }
    Ok(())
}
