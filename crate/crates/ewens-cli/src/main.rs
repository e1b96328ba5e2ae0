//! `ewens` — exact distributions, estimators, and Monte Carlo studies for
//! Ewens random partitions.

mod config;
mod report;

use std::path::PathBuf;

use anyhow::{bail, Context};
use chrono::{SecondsFormat, Utc};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ewens::montecarlo::{replication_stream, run_experiment, ExperimentConfig, DEFAULT_SEED};
use ewens::{
    enumerate_partitions, estimate_bc1, estimate_bc2, estimate_nm, estimate_population_num_types,
    ewens_log_pmf, kn_log_pmf, population_unique_risk, sample_partition, solve_adjusted_mle,
    solve_mle, stirling1_log_table, ClipPolicy, EstimateRecord, EstimatorKind, SolutionKind,
};

use config::{config_digest, load_config};
use report::{sig9, write_manifest, write_summary_csv, RunManifest};

#[derive(Parser)]
#[command(
    name = "ewens",
    version,
    about = "Ewens-partition distributions, diversity estimation, and bias studies",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact probability mass function of a sample, at the partition or
    /// type-count level.
    Pmf(PmfArgs),
    /// Point estimate of a size index R_i (or the population type count)
    /// from an observed number of types.
    Estimate(EstimateArgs),
    /// Population-unique disclosure risk f * R^_1 for a known sampling
    /// fraction f = n/N.
    Risk(RiskArgs),
    /// Draw random partitions from the Ewens distribution.
    Sample(SampleArgs),
    /// Run a Monte Carlo experiment grid and write summary.csv + manifest.
    Simulate(SimulateArgs),
    /// Run a quick internal consistency battery.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum PmfLevel {
    /// Distribution of the number of types K_n.
    K,
    /// Distribution over whole partitions (n capped by the enumeration
    /// limit).
    #[value(alias = "full")]
    Partition,
}

#[derive(Args)]
struct PmfArgs {
    /// Sample size.
    #[arg(long)]
    n: usize,
    /// Diversity parameter.
    #[arg(long)]
    theta: f64,
    #[arg(long, value_enum, default_value = "k")]
    level: PmfLevel,
}

#[derive(Clone, Copy, ValueEnum)]
enum EstChoice {
    Nm,
    Bc1,
    Bc2,
    /// Expected number of population types at the ML root.
    Eta,
}

#[derive(Clone, Copy, ValueEnum)]
enum RiskScheme {
    Nm,
    Bc1,
    Bc2,
}

impl From<RiskScheme> for EstimatorKind {
    fn from(s: RiskScheme) -> Self {
        match s {
            RiskScheme::Nm => EstimatorKind::Nm,
            RiskScheme::Bc1 => EstimatorKind::Bc1,
            RiskScheme::Bc2 => EstimatorKind::Bc2,
        }
    }
}

/// Clipping-scheme knobs shared by the estimation commands.
#[derive(Args)]
struct PolicyArgs {
    /// Ceiling C+ of the admissible theta interval (0, C+].
    #[arg(long, default_value_t = 1e6)]
    c_plus: f64,
    /// Floor substituted for non-positive adjusted solutions.
    #[arg(long, default_value_t = 1e-8)]
    theta_floor: f64,
    /// Size-index value reported when k = 1.
    #[arg(long, default_value_t = 0.0)]
    value_at_k1: f64,
    /// Type-count value reported when k = 1.
    #[arg(long, default_value_t = 1.0)]
    eta_at_k1: f64,
}

impl PolicyArgs {
    fn policy(&self) -> ClipPolicy {
        ClipPolicy {
            c_plus: self.c_plus,
            theta_floor: self.theta_floor,
            value_at_k1: self.value_at_k1,
            eta_value_at_k1: self.eta_at_k1,
        }
    }
}

#[derive(Args)]
struct EstimateArgs {
    /// Observed number of types.
    #[arg(long)]
    k: usize,
    /// Sample size.
    #[arg(long)]
    n: usize,
    /// Population size.
    #[arg(long = "N")]
    pop_size: usize,
    /// Target size index i of R_i.
    #[arg(long, default_value_t = 1)]
    i: usize,
    /// Estimator to apply.
    #[arg(long, value_enum)]
    est: EstChoice,
    #[command(flatten)]
    policy: PolicyArgs,
}

#[derive(Args)]
struct RiskArgs {
    /// Observed number of types.
    #[arg(long)]
    k: usize,
    /// Sample size.
    #[arg(long)]
    n: usize,
    /// Population size.
    #[arg(long = "N")]
    pop_size: usize,
    /// Which R_1 estimator to scale by the sampling fraction.
    #[arg(long, value_enum, default_value = "nm")]
    scheme: RiskScheme,
    #[command(flatten)]
    policy: PolicyArgs,
}

#[derive(Args)]
struct SampleArgs {
    /// Sample size.
    #[arg(long)]
    n: usize,
    /// Diversity parameter.
    #[arg(long)]
    theta: f64,
    /// Number of draws.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Master seed; draw r uses the stream of replication r.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct SimulateArgs {
    /// TOML experiment config; defaults to the built-in study grid.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for summary.csv and manifest.json
    /// (default: $EWENS_OUT_DIR, else the current directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker thread count (default: one per CPU). Results do not depend on
    /// it.
    #[arg(long)]
    threads: Option<usize>,
    /// Override the config's population size.
    #[arg(long = "N")]
    pop_size: Option<usize>,
    /// Override the config's sample sizes (comma-separated).
    #[arg(long, value_delimiter = ',')]
    n_values: Option<Vec<usize>>,
    /// Override the config's diversity parameters (comma-separated).
    #[arg(long, value_delimiter = ',')]
    theta_values: Option<Vec<f64>>,
    /// Override the config's replication count.
    #[arg(long)]
    reps: Option<usize>,
    /// Override the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config's target size index.
    #[arg(long = "i")]
    target_index: Option<usize>,
    /// Override the config's estimator list (comma-separated nm,bc1,bc2).
    #[arg(long, value_delimiter = ',')]
    estimators: Option<Vec<String>>,
    /// Draw size-N partitions and subsample instead of sampling at size n.
    #[arg(long)]
    subsample_validation: bool,
}

fn main() {
    if let Err(e) = run() {
        // Multi-line causes (e.g. TOML snippets) are collapsed so every
        // failure is a single machine-parseable line.
        let raw = format!("{e:#}");
        eprintln!("error: {}", raw.split_whitespace().collect::<Vec<_>>().join(" "));
        std::process::exit(1);
    }
}

fn run() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Pmf(args) => cmd_pmf(&args),
        Command::Estimate(args) => cmd_estimate(&args),
        Command::Risk(args) => cmd_risk(&args),
        Command::Sample(args) => cmd_sample(&args),
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Selftest => cmd_selftest(),
    }
}

fn cmd_pmf(args: &PmfArgs) -> anyhow::Result<()> {
    match args.level {
        PmfLevel::K => {
            let table = stirling1_log_table(args.n)?;
            println!("k,log_prob,prob");
            for k in 1..=args.n {
                let lp = kn_log_pmf(args.n, k, args.theta, &table)?;
                println!("{k},{},{}", sig9(lp), sig9(lp.exp()));
            }
        }
        PmfLevel::Partition => {
            println!("s,k,log_prob,prob");
            for p in enumerate_partitions(args.n)? {
                let lp = ewens_log_pmf(&p, args.theta)?;
                println!("{p},{},{},{}", p.k(), sig9(lp), sig9(lp.exp()));
            }
        }
    }
    Ok(())
}

fn record_row(rec: &EstimateRecord) -> String {
    format!(
        "{},{},{},{}",
        rec.kind.code(),
        sig9(rec.value),
        sig9(rec.theta_used),
        rec.branch
    )
}

fn cmd_estimate(args: &EstimateArgs) -> anyhow::Result<()> {
    let policy = args.policy.policy();
    let (k, n, pop, i) = (args.k, args.n, args.pop_size, args.i);
    let rec = match args.est {
        EstChoice::Nm => estimate_nm(k, n, i, pop, &policy)?,
        EstChoice::Bc1 => estimate_bc1(k, n, i, pop, &policy)?,
        EstChoice::Bc2 => estimate_bc2(k, n, i, pop, &policy)?,
        EstChoice::Eta => estimate_population_num_types(k, n, pop, &policy)?,
    };
    println!("estimator,value,theta_used,branch");
    println!("{}", record_row(&rec));
    Ok(())
}

fn cmd_risk(args: &RiskArgs) -> anyhow::Result<()> {
    let policy = args.policy.policy();
    let risk = population_unique_risk(args.k, args.n, args.pop_size, args.scheme.into(), &policy)?;
    println!("estimator,value,theta_used,branch,f,risk");
    println!(
        "{},{},{}",
        record_row(&risk.r1),
        sig9(risk.sampling_fraction),
        sig9(risk.risk)
    );
    Ok(())
}

fn cmd_sample(args: &SampleArgs) -> anyhow::Result<()> {
    if args.count < 1 {
        bail!("count must be at least 1");
    }
    println!("rep,k,s");
    for rep in 0..args.count {
        let mut rng = replication_stream(args.seed, 0, rep);
        let p = sample_partition(args.n, args.theta, &mut rng)?;
        println!("{rep},{},{p}", p.k());
    }
    Ok(())
}

fn apply_overrides(cfg: &mut ExperimentConfig, args: &SimulateArgs) -> anyhow::Result<()> {
    if let Some(pop_size) = args.pop_size {
        cfg.pop_size = pop_size;
    }
    if let Some(n_values) = &args.n_values {
        cfg.n_values = n_values.clone();
    }
    if let Some(theta_values) = &args.theta_values {
        cfg.theta_values = theta_values.clone();
    }
    if let Some(reps) = args.reps {
        cfg.reps = reps;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(target_index) = args.target_index {
        cfg.target_index = target_index;
    }
    if let Some(estimators) = &args.estimators {
        cfg.estimators = estimators
            .iter()
            .map(|name| name.parse().map_err(anyhow::Error::from))
            .collect::<anyhow::Result<_>>()?;
    }
    if args.subsample_validation {
        cfg.subsample_validation = true;
    }
    Ok(())
}

fn cmd_simulate(args: &SimulateArgs) -> anyhow::Result<()> {
    let mut cfg = load_config(args.config.as_deref())?;
    apply_overrides(&mut cfg, args)?;
    cfg.canonicalize().context("invalid experiment config")?;
    let digest = config_digest(&cfg);

    let out_dir = args
        .out
        .clone()
        .or_else(|| std::env::var_os("EWENS_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;

    let started = Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true);
    let rows = match args.threads {
        Some(threads) => {
            if threads < 1 {
                bail!("threads must be at least 1");
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .context("building worker pool")?
                .install(|| run_experiment(&cfg))?
        }
        None => run_experiment(&cfg)?,
    };
    let finished = Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true);

    let csv_path = out_dir.join("summary.csv");
    write_summary_csv(&csv_path, &rows)?;
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config_digest: digest,
        seed: cfg.seed,
        started,
        finished,
        row_count: rows.len(),
    };
    write_manifest(&out_dir.join("manifest.json"), &manifest)?;
    eprintln!("wrote {} rows to {}", rows.len(), csv_path.display());
    Ok(())
}

fn check(name: &str, ok: bool) -> anyhow::Result<()> {
    if ok {
        println!("selftest: {name} ok");
        Ok(())
    } else {
        bail!("selftest failed: {name}");
    }
}

fn cmd_selftest() -> anyhow::Result<()> {
    let total: f64 = enumerate_partitions(8)?
        .iter()
        .map(|p| ewens_log_pmf(p, 1.7).unwrap().exp())
        .sum();
    check("partition pmf normalizes at n=8", (total - 1.0).abs() < 1e-10)?;

    let ml = match solve_mle(2, 3)?.kind {
        SolutionKind::Interior(theta) => theta,
        _ => f64::NAN,
    };
    check("ML root of k=2, n=3 is sqrt(2)", (ml - 2.0_f64.sqrt()).abs() < 1e-9)?;

    let adjusted = match solve_adjusted_mle(2, 2)?.kind {
        SolutionKind::Interior(theta) => theta,
        _ => f64::NAN,
    };
    check("adjusted root of k=2, n=2 is 1", (adjusted - 1.0).abs() < 1e-9)?;

    let r3 = ewens::expected_size_index(1.0, 3, 50)?;
    check("R_3(1, N) = 1/3", (r3 - 1.0 / 3.0).abs() < 1e-12)?;

    let mass: f64 = (1..=30)
        .map(|i| i as f64 * ewens::expected_size_index(2.5, i, 30).unwrap())
        .sum();
    check("size indices carry the whole population", (mass - 30.0).abs() < 1e-8)?;

    let cfg = ExperimentConfig {
        pop_size: 500,
        n_values: vec![15],
        theta_values: vec![2.0],
        reps: 50,
        seed: 12345,
        ..ExperimentConfig::default()
    };
    let rows_a = run_experiment(&cfg)?;
    let rows_b = run_experiment(&cfg)?;
    check("experiment reruns are identical", rows_a == rows_b)?;

    println!("selftest: all checks passed");
    Ok(())
}
