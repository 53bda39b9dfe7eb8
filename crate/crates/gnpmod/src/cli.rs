//! Subcommand definitions and dispatch. Every subcommand merges its flags
//! over an optional JSON config, validates the result, and writes one report.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use gnpmod_core::bisection::{
    error_decomposition, exact_min_bisection_capped, local_search_bisection,
    bisection_modularity_certificate, DEFAULT_BISECTION_CAP,
};
use gnpmod_core::bounds::{bound_report, Validity};
use gnpmod_core::concentration::{
    binomial_tail_check, check_subset_events, chernoff_lower, chernoff_upper,
    default_size_schedule, verify_appendix, EventMode, EventSummary, GridSpec, SamplePlan,
    DEFAULT_EVENTS_CAP,
};
use gnpmod_core::modularity::{
    exact_modularity_capped, heuristic_modularity, score_definition, score_edge_form,
    DEFAULT_EXACT_CAP,
};
use gnpmod_core::spectral::{spectral_gap_capped, DEFAULT_SPECTRAL_CAP};
use gnpmod_core::{sample_gnp, Graph, ModularityResult};

use crate::config::{merge, Format, RunConfig, SubsetMode};
use crate::error::{CliError, CliResult};
use crate::experiments::{sampled_events, sweep, sweep_aggregates, sweep_report, sweep_trial};
use crate::io::{format_edge_list, format_partition, read_edge_list, read_partition, write_text};
use crate::report::{num, unix_time, Report};

#[derive(Debug, Parser)]
#[command(name = "gnpmod", version, about = "Modularity experiments on binomial random graphs G(n, p)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample G(n, p) and write it as an edge list
    Sample(SampleArgs),
    /// Score a partition with both modularity formulas
    Score(ScoreArgs),
    /// Exact modularity by enumerating all set partitions
    ModExact(ModExactArgs),
    /// Heuristic modularity by local moves and aggregation
    ModHeuristic(HeuristicArgs),
    /// Normalized-Laplacian spectral gap
    Spectral(SpectralArgs),
    /// Closed-form modularity bounds with validity flags
    Bounds(BoundsArgs),
    /// Chernoff bounds and a Monte Carlo binomial tail check
    Chernoff(ChernoffArgs),
    /// Grid verification of the auxiliary inequalities
    VerifyAppendix(AppendixArgs),
    /// Subset edge-count events, exhaustive or sampled
    Events(EventsArgs),
    /// Balanced minimum bisection and its error decomposition
    Bisect(BisectArgs),
    /// Modularity lower bound from a bisection
    Certificate(HeuristicArgs),
    /// Heuristic modularity, certificate and bounds over densities and trials
    Sweep(SweepArgs),
}

fn is_false(b: &bool) -> bool {
    !b
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// JSON run configuration; flags override its fields
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Omit wall-clock and time of day from text output and metadata
    #[arg(long)]
    #[serde(skip_serializing_if = "is_false")]
    pub no_timestamp: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DensityArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability; give this or --d
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<f64>>,
    /// Expected degree parameter d = np; give this or --p
    #[arg(long, value_delimiter = ',')]
    pub d: Option<Vec<f64>>,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// A graph read from `--graph` or sampled from `--n`, `--p`/`--d`, `--seed`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphArgs {
    /// Edge-list file
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub density: DensityArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    pub density: DensityArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScoreArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Partition file, one block per line
    #[arg(long)]
    pub partition: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ModExactArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Largest n to enumerate
    #[arg(long)]
    pub cap: Option<usize>,
    /// Also write the optimal partition here
    #[arg(long)]
    pub partition_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HeuristicArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Independent restarts (default 10)
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub partition_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectralArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    /// Largest n for the dense eigensolve
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BoundsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub d: Option<Vec<f64>>,
    /// Subset-event constant C (default 1.999)
    #[arg(long)]
    pub c: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChernoffArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    pub density: DensityArgs,
    /// Deviation from the mean
    #[arg(long)]
    pub t: Option<f64>,
    /// Monte Carlo draws (default 100000)
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AppendixArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// z values of the grid
    #[arg(long, value_delimiter = ',')]
    pub z: Option<Vec<f64>>,
    #[arg(long)]
    pub x_step: Option<f64>,
    #[arg(long)]
    pub y_step: Option<f64>,
    #[arg(long)]
    pub y_max: Option<f64>,
    #[arg(long)]
    pub g_x_max: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EventsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub c: Option<f64>,
    /// Exhaustive when n <= cap unless set
    #[arg(long, value_enum)]
    pub mode: Option<SubsetMode>,
    /// Uniformly random subsets in sampled mode (default 10000)
    #[arg(long)]
    pub trials: Option<u64>,
    /// Subsets per size of the default size schedule (default 1000)
    #[arg(long)]
    pub per_size: Option<u64>,
    /// Largest n for exhaustive mode
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BisectArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Exact minimum by enumeration instead of local search
    #[arg(long)]
    #[serde(skip_serializing_if = "is_false")]
    pub exact: bool,
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub partition_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    pub density: DensityArgs,
    /// Trials per density (default 10)
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Recompute only the row whose seed column is SEED
    #[arg(long, value_name = "SEED")]
    pub replay: Option<u64>,
    /// Also write a JSON record of the run here
    #[arg(long)]
    pub meta: Option<PathBuf>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Sample(_) => "sample",
            Command::Score(_) => "score",
            Command::ModExact(_) => "mod-exact",
            Command::ModHeuristic(_) => "mod-heuristic",
            Command::Spectral(_) => "spectral",
            Command::Bounds(_) => "bounds",
            Command::Chernoff(_) => "chernoff",
            Command::VerifyAppendix(_) => "verify-appendix",
            Command::Events(_) => "events",
            Command::Bisect(_) => "bisect",
            Command::Certificate(_) => "certificate",
            Command::Sweep(_) => "sweep",
        }
    }

    fn config(&self) -> CliResult<RunConfig> {
        let name = self.name();
        macro_rules! load {
            ($a:expr) => {
                merge(name, $a.common.config.as_deref(), $a)
            };
        }
        match self {
            Command::Sample(a) => load!(a),
            Command::Score(a) => load!(a),
            Command::ModExact(a) => load!(a),
            Command::ModHeuristic(a) | Command::Certificate(a) => load!(a),
            Command::Spectral(a) => load!(a),
            Command::Bounds(a) => load!(a),
            Command::Chernoff(a) => load!(a),
            Command::VerifyAppendix(a) => load!(a),
            Command::Events(a) => load!(a),
            Command::Bisect(a) => load!(a),
            Command::Sweep(a) => load!(a),
        }
    }
}

/// Parses `args` (including the program name), runs the command, and maps
/// the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gnpmod {}: {e}", cli.command.name());
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(command: &Command) -> CliResult<()> {
    let start = Instant::now();
    let cfg = command.config()?;
    let (report, default_format) = match command {
        Command::Sample(_) => return cmd_sample(&cfg),
        Command::Score(_) => (cmd_score(&cfg)?, Format::Table),
        Command::ModExact(_) => (cmd_mod_exact(&cfg)?, Format::Table),
        Command::ModHeuristic(_) => (cmd_heuristic(&cfg, false)?, Format::Table),
        Command::Certificate(_) => (cmd_heuristic(&cfg, true)?, Format::Table),
        Command::Spectral(_) => (cmd_spectral(&cfg)?, Format::Table),
        Command::Bounds(_) => (cmd_bounds(&cfg)?, Format::Csv),
        Command::Chernoff(_) => (cmd_chernoff(&cfg)?, Format::Csv),
        Command::VerifyAppendix(_) => {
            let (report, passed) = cmd_appendix(&cfg)?;
            emit(&cfg, &report, Format::Table, start)?;
            return if passed {
                Ok(())
            } else {
                Err(CliError::Internal("appendix verification failed".into()))
            };
        }
        Command::Events(_) => (cmd_events(&cfg)?, Format::Csv),
        Command::Bisect(_) => (cmd_bisect(&cfg)?, Format::Table),
        Command::Sweep(_) => (cmd_sweep(&cfg, start)?, Format::Csv),
    };
    emit(&cfg, &report, default_format, start)
}

fn emit(cfg: &RunConfig, report: &Report, default: Format, start: Instant) -> CliResult<()> {
    let text = report.render(cfg.format_or(default), start.elapsed(), cfg.no_timestamp())?;
    write_out(cfg, &text)
}

fn write_out(cfg: &RunConfig, text: &str) -> CliResult<()> {
    match &cfg.output {
        Some(path) => write_text(path, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(e.to_string())),
    }
}

/// The graph named by `--graph`, or a fresh sample. With `--graph`, `--n`
/// must be absent or agree with the file, and `--seed` must be absent.
fn load_graph(cfg: &RunConfig) -> CliResult<Graph> {
    match &cfg.graph {
        Some(path) => {
            let g = read_edge_list(path)?;
            if let Some(n) = cfg.n {
                if n != g.n() {
                    return Err(CliError::invalid(
                        "n",
                        format!("{n} disagrees with n = {} in {}", g.n(), path.display()),
                    ));
                }
            }
            if cfg.seed.is_some() {
                return Err(CliError::invalid("seed", "only applies to sampled graphs, not --graph"));
            }
            Ok(g)
        }
        None => {
            let n = cfg.n()?;
            let density = cfg.density(n)?;
            Ok(sample_gnp(n, density.p, cfg.seed())?)
        }
    }
}

/// The density parameter `d` for a graph: from `--p`/`--d` when given, which
/// is mandatory for file input.
fn d_for(cfg: &RunConfig, g: &Graph) -> CliResult<f64> {
    if !cfg.has_density() {
        return Err(CliError::invalid("p/d", "one of p and d is required"));
    }
    Ok(cfg.density(g.n())?.d)
}

fn cmd_sample(cfg: &RunConfig) -> CliResult<()> {
    if cfg.graph.is_some() {
        return Err(CliError::invalid("graph", "sample does not read a graph"));
    }
    let g = load_graph(cfg)?;
    write_out(cfg, &format_edge_list(&g))
}

fn cmd_score(cfg: &RunConfig) -> CliResult<Report> {
    let g = load_graph(cfg)?;
    let path = cfg
        .partition
        .as_ref()
        .ok_or_else(|| CliError::invalid("partition", "required"))?;
    let p = read_partition(path, g.n())?;
    let mut report = Report::new(["n", "m", "blocks", "score_definition", "score_edge_form"]);
    report.push(vec![
        g.n().to_string(),
        g.edge_count().to_string(),
        p.len().to_string(),
        num(score_definition(&g, &p)?),
        num(score_edge_form(&g, &p)?),
    ]);
    Ok(report)
}

fn result_report(g: &Graph, r: &ModularityResult, extra: &[(&str, String)]) -> Report {
    let mut columns = vec!["n", "m", "score", "method", "blocks"];
    let mut row = vec![
        g.n().to_string(),
        g.edge_count().to_string(),
        num(r.score),
        r.method.as_str().to_string(),
        r.partition.len().to_string(),
    ];
    for (k, v) in extra {
        columns.push(k);
        row.push(v.clone());
    }
    let mut report = Report::new(columns);
    report.push(row);
    report
}

fn write_partition_out(cfg: &RunConfig, r: &ModularityResult) -> CliResult<()> {
    if let Some(path) = &cfg.partition_out {
        write_text(path, &format_partition(&r.partition))?;
    }
    Ok(())
}

fn cmd_mod_exact(cfg: &RunConfig) -> CliResult<Report> {
    let g = load_graph(cfg)?;
    let r = exact_modularity_capped(&g, cfg.cap.unwrap_or(DEFAULT_EXACT_CAP))?;
    write_partition_out(cfg, &r)?;
    Ok(result_report(&g, &r, &[]))
}

fn cmd_heuristic(cfg: &RunConfig, certificate: bool) -> CliResult<Report> {
    let g = load_graph(cfg)?;
    let restarts = cfg.restarts()?;
    let seed = cfg.seed();
    let r = if certificate {
        bisection_modularity_certificate(&g, seed, restarts)
    } else {
        heuristic_modularity(&g, seed, restarts)
    };
    write_partition_out(cfg, &r)?;
    let mut extra = vec![("seed", seed.to_string()), ("restarts", restarts.to_string())];
    if cfg.has_density() {
        let d = d_for(cfg, &g)?;
        extra.push(("score_sqrt_d", num(r.score * d.sqrt())));
    }
    Ok(result_report(&g, &r, &extra))
}

fn cmd_spectral(cfg: &RunConfig) -> CliResult<Report> {
    let g = load_graph(cfg)?;
    let r = spectral_gap_capped(&g, cfg.cap.unwrap_or(DEFAULT_SPECTRAL_CAP))?;
    let len = r.eigenvalues.len();
    let mut report = Report::new(["n", "m", "isolated", "lambda_1", "lambda_max", "gap"]);
    report.push(vec![
        g.n().to_string(),
        g.edge_count().to_string(),
        g.isolated_count().to_string(),
        r.eigenvalues.get(1).map_or(String::new(), |&x| num(x)),
        r.eigenvalues.last().filter(|_| len > 1).map_or(String::new(), |&x| num(x)),
        num(r.gap),
    ]);
    Ok(report)
}

fn flag_cell(v: Validity) -> String {
    match v.note() {
        "" => v.label().to_string(),
        note => format!("{} ({note})", v.label()),
    }
}

fn cmd_bounds(cfg: &RunConfig) -> CliResult<Report> {
    let n = cfg.n()?;
    let c = cfg.c()?;
    let mut report = Report::new([
        "n",
        "d",
        "p",
        "C",
        "regime",
        "upper_main",
        "upper_any_d",
        "upper_asymptotic",
        "spectral_upper",
        "lower_Pstar",
        "lower_Pstar_low",
        "lower_Pstar_high",
        "lower_one_fifth",
        "upper_main_flag",
        "upper_any_d_flag",
        "upper_asymptotic_flag",
        "spectral_upper_flag",
        "lower_Pstar_flag",
        "lower_one_fifth_flag",
    ]);
    for density in cfg.densities(n)? {
        let r = bound_report(n, density.d, c)?;
        report.push(vec![
            n.to_string(),
            num(r.d),
            num(r.p),
            num(r.c),
            r.regime.as_str().to_string(),
            num(r.upper_main),
            num(r.upper_any_d),
            num(r.upper_asymptotic),
            num(r.spectral_upper),
            num(r.lower_pstar),
            num(r.lower_pstar_interval.0),
            num(r.lower_pstar_interval.1),
            num(r.lower_one_fifth),
            flag_cell(r.flags.upper_main),
            flag_cell(r.flags.upper_any_d),
            flag_cell(r.flags.upper_asymptotic),
            flag_cell(r.flags.spectral_upper),
            flag_cell(r.flags.lower_pstar),
            flag_cell(r.flags.lower_one_fifth),
        ]);
    }
    report.note("unquantified constants a, b, c0 are carried by name only");
    Ok(report)
}

fn cmd_chernoff(cfg: &RunConfig) -> CliResult<Report> {
    let n = cfg.n()?;
    let density = cfg.density(n)?;
    let t = cfg.t.ok_or_else(|| CliError::invalid("t", "required"))?;
    let samples = cfg.samples.unwrap_or(100_000);
    if samples == 0 {
        return Err(CliError::invalid("samples", "must be >= 1"));
    }
    let check = binomial_tail_check(n as u64, density.p, t, samples, cfg.seed())?;
    // Same values as the check carries; recomputed to surface domain errors
    // on their own fields.
    let upper = chernoff_upper(check.mu, t)?;
    let lower = chernoff_lower(check.mu, t)?;
    let mut report = Report::new([
        "n",
        "p",
        "t",
        "mu",
        "samples",
        "seed",
        "bound_phi",
        "bound_quad",
        "bound_lower",
        "upper_freq",
        "upper_se",
        "lower_freq",
        "lower_se",
        "holds_3se",
    ]);
    report.push(vec![
        n.to_string(),
        num(density.p),
        num(t),
        num(check.mu),
        samples.to_string(),
        cfg.seed().to_string(),
        num(upper.bound_phi),
        num(upper.bound_quad),
        num(lower),
        num(check.upper_freq),
        num(check.upper_se),
        num(check.lower_freq),
        num(check.lower_se),
        check.holds(3.0).to_string(),
    ]);
    Ok(report)
}

fn cmd_appendix(cfg: &RunConfig) -> CliResult<(Report, bool)> {
    let mut grid = GridSpec::default();
    if let Some(z) = &cfg.z {
        grid.z_values = z.clone();
    }
    grid.x_step = RunConfig::positive(cfg.x_step, "x_step", grid.x_step)?;
    grid.y_step = RunConfig::positive(cfg.y_step, "y_step", grid.y_step)?;
    grid.y_max = RunConfig::positive(cfg.y_max, "y_max", grid.y_max)?;
    grid.g_x_max = RunConfig::positive(cfg.g_x_max, "g_x_max", grid.g_x_max)?;
    let r = verify_appendix(&grid)?;
    let mono = r.monotonicity_violations;
    let z_list: Vec<String> = r.grid.z_values.iter().map(|&z| num(z)).collect();
    let mut report = Report::new(["quantity", "value"]);
    let rows: Vec<(&str, String)> = vec![
        ("passed", r.passed().to_string()),
        ("min_f", num(r.min_f)),
        ("argmin_f", format!("({}, {}, {})", r.argmin_f.0, r.argmin_f.1, r.argmin_f.2)),
        ("f_threshold", num(gnpmod_core::concentration::F_THRESHOLD)),
        ("f_evaluations", r.f_evaluations.to_string()),
        ("min_g", num(r.min_g)),
        ("argmin_g", format!("({}, {})", r.argmin_g.0, r.argmin_g.1)),
        ("g_threshold", num(gnpmod_core::concentration::G_THRESHOLD)),
        ("g_evaluations", r.g_evaluations.to_string()),
        ("violations_phi", mono.phi.to_string()),
        ("violations_g_in_x", mono.g_in_x.to_string()),
        ("violations_g_in_z", mono.g_in_z.to_string()),
        ("violations_h1", mono.h1.to_string()),
        ("violations_h2", mono.h2.to_string()),
        ("violations_h3", mono.h3.to_string()),
        ("corner_f", num(r.corner_f)),
        ("corner_g", num(r.corner_g)),
        ("h2_corner", num(r.h2_corner)),
        ("grid_x_step", num(r.grid.x_step)),
        ("grid_y", format!("[{}, {}] step {}", r.grid.y_min, r.grid.y_max, r.grid.y_step)),
        ("grid_z", z_list.join(" ")),
        ("grid_g_x", format!("[{}, {}] step {}", r.grid.g_x_min, r.grid.g_x_max, r.grid.g_x_step)),
    ];
    for (k, v) in rows {
        report.push(vec![k.to_string(), v]);
    }
    Ok((report, r.passed()))
}

pub const EVENT_COLUMNS: [&str; 6] = [
    "regime",
    "k",
    "trials",
    "violations_3_1",
    "violations_3_2",
    "violations_3_3",
];

pub fn events_report(summary: &EventSummary) -> Report {
    let mut report = Report::new(EVENT_COLUMNS);
    for row in summary.rows() {
        report.push(vec![
            row.regime.as_str().to_string(),
            row.k.to_string(),
            row.trials.to_string(),
            row.violations[0].to_string(),
            row.violations[1].to_string(),
            row.violations[2].to_string(),
        ]);
    }
    let [a, b, c] = summary.violations();
    report.note(format!(
        "{} subsets, violations: inside {a}, outside {b}, cut {c}",
        summary.trials()
    ));
    for (labels, flags) in &summary.examples {
        let labels: Vec<String> = labels.iter().map(u32::to_string).collect();
        report.note(format!(
            "violating subset s = {}: inside {} outside {} cut {}: {}",
            flags.s,
            flags.inside_excess,
            flags.outside_excess,
            flags.cut_deficit,
            labels.join(" ")
        ));
    }
    report
}

fn cmd_events(cfg: &RunConfig) -> CliResult<Report> {
    let g = load_graph(cfg)?;
    let d = d_for(cfg, &g)?;
    if !(d > 0.0) {
        return Err(CliError::invalid("d", "must be > 0 for the event thresholds"));
    }
    let c = cfg.c()?;
    let cap = cfg.cap.unwrap_or(DEFAULT_EVENTS_CAP);
    let mode = cfg.mode.unwrap_or(if g.n() <= cap {
        SubsetMode::Exhaustive
    } else {
        SubsetMode::Sampled
    });
    let summary = match mode {
        SubsetMode::Exhaustive => check_subset_events(&g, c, d, &EventMode::Exhaustive { cap })?,
        SubsetMode::Sampled => {
            let plan = SamplePlan {
                uniform_trials: cfg.trials.unwrap_or(10_000),
                per_size_trials: cfg.per_size.unwrap_or(1_000),
                sizes: default_size_schedule(g.n()),
                seed: cfg.seed(),
            };
            if plan.trial_count() == 0 {
                return Err(CliError::invalid("trials", "trials + per_size must draw at least one subset"));
            }
            sampled_events(&g, c, d, &plan, cfg.jobs()?)?
        }
    };
    Ok(events_report(&summary))
}

fn cmd_bisect(cfg: &RunConfig) -> CliResult<Report> {
    let g = load_graph(cfg)?;
    let (b, method) = if cfg.exact.unwrap_or(false) {
        let cap = cfg.cap.unwrap_or(DEFAULT_BISECTION_CAP);
        (exact_min_bisection_capped(&g, cap)?, "exact")
    } else {
        (local_search_bisection(&g, cfg.seed(), cfg.restarts()?), "local_search")
    };
    if let Some(path) = &cfg.partition_out {
        write_text(path, &format_partition(&b.partition()))?;
    }
    let mut columns = vec!["n", "m", "method", "size", "cut"];
    let mut row = vec![
        g.n().to_string(),
        g.edge_count().to_string(),
        method.to_string(),
        b.subset.len().to_string(),
        b.cut.to_string(),
    ];
    if cfg.has_density() {
        let d = d_for(cfg, &g)?;
        let e = error_decomposition(&g, &b.subset, d)?;
        let residual = e.residual();
        columns.extend([
            "d",
            "cut_over_n",
            "err0",
            "err1",
            "err2",
            "residual_units",
            "residual_eighths",
            "within_0.81",
        ]);
        row.extend([
            num(d),
            num(b.cut as f64 / g.n() as f64),
            num(e.err0_value()),
            num(e.err1_value()),
            num(e.err2_value()),
            residual.units.to_string(),
            residual.eighths.to_string(),
            e.within_half_deviation(0.81).to_string(),
        ]);
    }
    let mut report = Report::new(columns);
    report.push(row);
    Ok(report)
}

fn cmd_sweep(cfg: &RunConfig, start: Instant) -> CliResult<Report> {
    let n = cfg.n()?;
    let restarts = cfg.restarts()?;
    let ds: Vec<f64> = cfg.densities(n)?.iter().map(|x| x.d).collect();
    let rows = match cfg.replay {
        Some(seed) => {
            let d = cfg.density(n)?.d;
            vec![sweep_trial(n, d, seed, restarts)?]
        }
        None => sweep(n, &ds, cfg.trials(10)?, cfg.seed(), restarts, cfg.jobs()?)?,
    };
    let mut report = sweep_report(&rows);
    let aggregates = sweep_aggregates(&rows);
    for &(d, k, (hm, hse), (cm, cse)) in &aggregates {
        report.note(format!(
            "d = {d}: {k} trials, heuristic_mod {hm:.6} ± {hse:.6}, certificate {cm:.6} ± {cse:.6}"
        ));
    }
    if let Some(path) = &cfg.meta {
        let aggregates: Vec<_> = aggregates
            .iter()
            .map(|&(d, k, (hm, hse), (cm, cse))| {
                json!({
                    "d": d,
                    "trials": k,
                    "heuristic_mod_mean": hm,
                    "heuristic_mod_se": hse,
                    "certificate_mean": cm,
                    "certificate_se": cse,
                })
            })
            .collect();
        let mut meta = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "config": cfg,
            "columns": report.columns,
            "rows": report.rows,
            "aggregates": aggregates,
        });
        if !cfg.no_timestamp() {
            meta["wall_clock_seconds"] = json!(start.elapsed().as_secs_f64());
            meta["unix_time"] = json!(unix_time());
        }
        let text = serde_json::to_string_pretty(&meta).map_err(|e| CliError::Internal(e.to_string()))?;
        write_text(path, &(text + "\n"))?;
    }
    Ok(report)
}
