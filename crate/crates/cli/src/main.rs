mod args;
mod output;

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use gossipnet::generators::{generate_realization, run_ensemble, GeneratorConfig};
use gossipnet::ingest::{export_edge_list, parse_bipartite, parse_edge_list, project};
use gossipnet::{analyze, AnalysisOptions, ConfigError, IngestError, NetworkSummary};
use serde::Serialize;

use args::{AnalyzeArgs, Cli, Command, GenerateArgs, GeneratorArgs, MetricArgs, ProjectArgs, SweepArgs};

#[derive(Debug)]
pub enum CliError {
    /// Bad parameters that got past argument parsing.
    Usage(String),
    Input(String),
    Output(String),
    Invariant(String),
}

impl CliError {
    fn output<E: Display>(e: E) -> Self {
        CliError::Output(e.to_string())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) | CliError::Output(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Output(m) => write!(f, "output error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violated: {m}"),
        }
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gossipnet: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| CliError::Usage(e.to_string()))?;
    pool.install(|| match cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Project(a) => cmd_project(a),
        Command::Sweep(a) => cmd_sweep(a),
    })
}

fn analysis_options(m: &MetricArgs) -> Result<AnalysisOptions, CliError> {
    if m.min_samples == 0 {
        return Err(CliError::Usage("--min-samples must be at least 1".into()));
    }
    Ok(AnalysisOptions {
        models: m.model.into(),
        min_samples: m.min_samples,
        leaf: m.leaf_victims.into(),
    })
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Output(format!("{}: {e}", dir.display())))
}

fn check_summary(s: &NetworkSummary) -> Result<(), CliError> {
    if let (Some(sigma), Some(beta)) = (s.sigma, s.beta) {
        if beta > sigma {
            return Err(CliError::Invariant(format!("beta {beta} exceeds sigma {sigma}")));
        }
    }
    if !(0.0..=1.0).contains(&s.cc) {
        return Err(CliError::Invariant(format!(
            "clustering coefficient {} outside [0, 1]",
            s.cc
        )));
    }
    Ok(())
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<(), CliError> {
    let opts = analysis_options(&a.metrics)?;
    let g = parse_edge_list(&a.input, a.sep.separator())?;
    if g.edge_count() == 0 {
        return Err(CliError::Input(format!("{}: no edges", a.input.display())));
    }
    let analysis = analyze(&g, &opts);
    check_summary(&analysis.summary)?;

    ensure_dir(&a.out)?;
    let fmt = a.metrics.format;
    if fmt.csv() {
        output::write_summary_csv(&a.out.join("summary.csv"), &analysis.summary)?;
        output::write_curves_csv(&a.out.join("curves.csv"), &analysis.curves)?;
    }
    if fmt.json() {
        output::write_summary_json(&a.out.join("summary.json"), &analysis.summary)?;
        output::write_curves_json(&a.out.join("curves.json"), &analysis.curves)?;
    }
    output::write_labels(&a.out.join("labels.csv"), &g)
}

fn resolve_config(g: &GeneratorArgs) -> Result<GeneratorConfig, CliError> {
    let text = match &g.config {
        Some(path) => Some(fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?),
        None => None,
    };
    g.resolve(text.as_deref()).map_err(|e| match e {
        ConfigError::Parse(m) => CliError::Input(m),
        other => other.into(),
    })
}

#[derive(Serialize)]
struct GeneratedFile {
    file: String,
    seed: u64,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "M")]
    m: usize,
}

#[derive(Serialize)]
struct Manifest {
    schema_version: u32,
    config: GeneratorConfig,
    realizations: Vec<GeneratedFile>,
}

fn cmd_generate(a: GenerateArgs) -> Result<(), CliError> {
    use rayon::prelude::*;

    let cfg = resolve_config(&a.generator)?;
    ensure_dir(&a.out)?;
    let graphs = (0..cfg.realizations)
        .into_par_iter()
        .map(|i| generate_realization(&cfg, i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut files = Vec::with_capacity(graphs.len());
    for (i, g) in graphs.iter().enumerate() {
        let name = format!("realization_{i:03}.edges");
        output::write_bytes(&a.out.join(&name), export_edge_list(g).as_bytes())?;
        files.push(GeneratedFile {
            file: name,
            seed: gossipnet::generators::realization_seed(cfg.seed, i),
            n: g.node_count(),
            m: g.edge_count(),
        });
    }
    let manifest = Manifest {
        schema_version: output::SCHEMA_VERSION,
        config: cfg,
        realizations: files,
    };
    output::write_manifest(&a.out.join("manifest.json"), &manifest)
}

fn labels_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".labels.csv");
    PathBuf::from(name)
}

fn cmd_project(a: ProjectArgs) -> Result<(), CliError> {
    let events = parse_bipartite(&a.input, a.sep.separator())?;
    if events.groups.is_empty() {
        eprintln!("gossipnet: warning: {} has no records", a.input.display());
    }
    let g = project(&events, a.scheme.into());
    let text = export_edge_list(&g);
    match &a.out {
        Some(path) => {
            output::write_bytes(path, text.as_bytes())?;
            output::write_labels(&labels_path(path), &g)
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(CliError::output)?;
            stdout.flush().map_err(CliError::output)
        }
    }
}

fn cmd_sweep(a: SweepArgs) -> Result<(), CliError> {
    let cfg = resolve_config(&a.generator)?;
    let opts = analysis_options(&a.metrics)?;
    eprintln!(
        "gossipnet: {} realizations of {} (N={}, seed={})",
        cfg.realizations,
        cfg.model.as_str(),
        cfg.n,
        cfg.seed
    );
    let ensemble = run_ensemble(&cfg, &opts)?;
    for s in &ensemble.per_realization {
        check_summary(s)?;
    }
    eprintln!("gossipnet: analyzed {} realizations", ensemble.per_realization.len());

    ensure_dir(&a.out)?;
    let fmt = a.metrics.format;
    if fmt.csv() {
        output::write_realizations_csv(&a.out.join("realizations.csv"), &ensemble)?;
        output::write_ensemble_csv(&a.out.join("ensemble.csv"), &ensemble)?;
        output::write_mean_curves_csv(&a.out.join("mean_curves.csv"), &ensemble)?;
    }
    if fmt.json() {
        output::write_ensemble_json(&a.out.join("ensemble.json"), &ensemble)?;
    }
    Ok(())
}
