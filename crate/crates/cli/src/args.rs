use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schur_transform::io::OutputFormat;
use schur_transform::{Metric, SubsetMode};

#[derive(Debug, Parser)]
#[command(
    name = "schur",
    version,
    about = "Schur-Weyl decomposition of sample covariance tensors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Largest n accepted by any subcommand.
    #[arg(long, global = true, value_name = "N")]
    pub n_max: Option<usize>,

    /// Memory budget for projector construction, in MiB.
    #[arg(long, global = true, value_name = "MIB", env = "SCHUR_BUDGET_MIB")]
    pub budget: Option<u64>,

    /// Directory for cached projector numerators; verified on load.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the character table of S_n.
    Table { n: usize },
    /// Build the isotypic projectors for (n, k) and verify them exactly.
    Selfcheck { n: usize, k: usize },
    /// Schur transform of all input variables together.
    Transform {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        stats: StatsArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// n-factor Schur content over subsets of the input variables.
    Content {
        #[command(flatten)]
        input: Input,
        /// Subset size.
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        #[arg(long, value_enum, default_value = "all")]
        mode: ModeArg,
        #[command(flatten)]
        stats: StatsArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Assign a candidate variable to the class whose content it disturbs least.
    Classify {
        /// A class given as LABEL=MANIFEST; repeat for each class.
        #[arg(long = "class", value_name = "LABEL=MANIFEST", required = true, value_parser = parse_class)]
        classes: Vec<(String, PathBuf)>,
        /// Point file of the candidate variable.
        #[arg(long, value_name = "FILE")]
        candidate: PathBuf,
        #[arg(short = 'n', value_name = "N")]
        n: usize,
        #[arg(long, value_enum, default_value = "l2")]
        metric: MetricArg,
        /// Divide covariance tensors by the number of samples.
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    /// Manifest listing one point file per variable, in order.
    #[arg(long, value_name = "FILE", conflicts_with = "files")]
    pub manifest: Option<PathBuf>,
    /// Point files, one per variable.
    #[arg(value_name = "FILE", required_unless_present = "manifest")]
    pub files: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Divide covariance tensors by the number of samples.
    #[arg(long)]
    pub normalize: bool,
    /// Reference points (one row per variable) used instead of sample means.
    #[arg(long, value_name = "FILE")]
    pub refs: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "table")]
    pub format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    All,
    #[value(alias = "sequential")]
    Seq,
}

impl From<ModeArg> for SubsetMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::All => SubsetMode::All,
            ModeArg::Seq => SubsetMode::Sequential,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MetricArg {
    L1,
    L2,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::L1 => Metric::L1,
            MetricArg::L2 => Metric::L2,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Table,
    Struct,
    PlotCsv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => OutputFormat::Table,
            FormatArg::Struct => OutputFormat::Struct,
            FormatArg::PlotCsv => OutputFormat::PlotCsv,
        }
    }
}

fn parse_class(raw: &str) -> Result<(String, PathBuf), String> {
    match raw.split_once('=') {
        Some((label, path)) if !label.is_empty() && !path.is_empty() => Ok((label.to_string(), PathBuf::from(path))),
        _ => Err(format!("expected LABEL=MANIFEST, got {raw:?}")),
    }
}
