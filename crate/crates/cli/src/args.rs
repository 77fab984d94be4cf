use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gossipnet::generators::{GeneratorConfig, GeneratorModel, Truncation};
use gossipnet::ingest::{ProjectionScheme, Separator};
use gossipnet::{ConfigError, LeafConvention, ModelSelection};

#[derive(Debug, Parser)]
#[command(name = "gossipnet", version, about = "Gossip spreading on weighted networks")]
pub struct Cli {
    /// Worker threads for per-victim and per-realization work (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarize a weighted edge list and write per-degree curves.
    Analyze(AnalyzeArgs),
    /// Write generated network realizations as edge lists.
    Generate(GenerateArgs),
    /// Project bipartite group/member records onto a weighted edge list.
    Project(ProjectArgs),
    /// Generate and analyze an ensemble of networks.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModelArg {
    Unweighted,
    Weighted,
    Both,
}

impl From<ModelArg> for ModelSelection {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Unweighted => ModelSelection::Unweighted,
            ModelArg::Weighted => ModelSelection::Weighted,
            ModelArg::Both => ModelSelection::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
    Both,
}

impl FormatArg {
    pub fn csv(self) -> bool {
        matches!(self, FormatArg::Csv | FormatArg::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, FormatArg::Json | FormatArg::Both)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SepArg {
    Auto,
    Comma,
    Whitespace,
}

impl SepArg {
    pub fn separator(self) -> Option<Separator> {
        match self {
            SepArg::Auto => None,
            SepArg::Comma => Some(Separator::Comma),
            SepArg::Whitespace => Some(Separator::Whitespace),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LeafArg {
    Literal,
    Zero,
}

impl From<LeafArg> for LeafConvention {
    fn from(l: LeafArg) -> Self {
        match l {
            LeafArg::Literal => LeafConvention::Literal,
            LeafArg::Zero => LeafConvention::Zero,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SchemeArg {
    Count,
    Newman,
}

impl From<SchemeArg> for ProjectionScheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Count => ProjectionScheme::Count,
            SchemeArg::Newman => ProjectionScheme::Newman,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GeneratorArg {
    Er,
    Ba,
    Ws,
}

impl From<GeneratorArg> for GeneratorModel {
    fn from(g: GeneratorArg) -> Self {
        match g {
            GeneratorArg::Er => GeneratorModel::Er,
            GeneratorArg::Ba => GeneratorModel::Ba,
            GeneratorArg::Ws => GeneratorModel::Ws,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TruncationArg {
    Resample,
    Clamp,
}

/// Options shared by every command that computes spread metrics.
#[derive(Debug, Args)]
pub struct MetricArgs {
    #[arg(long, value_enum, default_value = "both")]
    pub model: ModelArg,
    #[arg(long, value_enum, default_value = "both")]
    pub format: FormatArg,
    /// Minimum victims per degree for a degree to qualify as k0.
    #[arg(long = "min-samples", default_value_t = 1)]
    pub min_samples: usize,
    /// How degree-1 victims enter the averages.
    #[arg(long = "leaf-victims", value_enum, default_value = "literal")]
    pub leaf_victims: LeafArg,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub sep: SepArg,
    #[command(flatten)]
    pub metrics: MetricArgs,
}

/// Generator parameters. Values come from `--config`, then the flags
/// override individual keys.
#[derive(Debug, Args)]
pub struct GeneratorArgs {
    /// Key-value generator config file (keys as in the flag names below).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Network model (`model` key in config files).
    #[arg(long, value_enum)]
    pub generator: Option<GeneratorArg>,
    #[arg(long = "N", alias = "nodes")]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub m0: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long = "weight_mean", alias = "weight-mean", allow_hyphen_values = true)]
    pub weight_mean: Option<f64>,
    #[arg(long = "weight_stddev", alias = "weight-stddev")]
    pub weight_stddev: Option<f64>,
    #[arg(long = "weight_truncation", alias = "weight-truncation", value_enum)]
    pub weight_truncation: Option<TruncationArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub realizations: Option<usize>,
}

impl GeneratorArgs {
    /// Config file (if any) with flag overrides applied, validated.
    pub fn resolve(&self, config_text: Option<&str>) -> Result<GeneratorConfig, ConfigError> {
        let mut cfg = match (config_text, self.generator) {
            (Some(text), _) => GeneratorConfig::from_toml_str(text)?,
            (None, Some(model)) => GeneratorConfig::small(model.into()),
            (None, None) => GeneratorConfig::default(),
        };
        if let Some(model) = self.generator {
            cfg.model = model.into();
        }
        if let Some(v) = self.n {
            cfg.n = v;
        }
        if let Some(v) = self.p {
            cfg.p = v;
        }
        if let Some(v) = self.m0 {
            cfg.m0 = v;
        }
        if let Some(v) = self.m {
            cfg.m = v;
        }
        if let Some(v) = self.k {
            cfg.k = v;
        }
        if let Some(v) = self.weight_mean {
            cfg.weight_mean = v;
        }
        if let Some(v) = self.weight_stddev {
            cfg.weight_stddev = v;
        }
        if let Some(v) = self.weight_truncation {
            cfg.weight_truncation = match v {
                TruncationArg::Resample => Truncation::Resample,
                TruncationArg::Clamp => Truncation::Clamp,
            };
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.realizations {
            cfg.realizations = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[command(flatten)]
    pub generator: GeneratorArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[command(flatten)]
    pub metrics: MetricArgs,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "count")]
    pub scheme: SchemeArg,
    /// Output edge list; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pub sep: SepArg,
}
