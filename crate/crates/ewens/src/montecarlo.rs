//! Deterministic Monte Carlo harness for the estimator bias study.
//!
//! An experiment runs a grid of `(n, theta)` cells at a fixed population
//! size, with a fixed number of replications per cell. Each replication draws
//! one partition, extracts the type count `k`, and evaluates the requested
//! estimators of the size index `R_i`. Cells report relative bias, relative
//! root-mean-square error, the rate of negative estimates, and a Monte Carlo
//! standard error for the relative bias.
//!
//! Reproducibility contract: every replication owns a counter-derived random
//! stream, so results are bit-identical across runs and across worker
//! counts. Replications within a cell run in parallel; aggregation is a
//! sequential reduction in replication order.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::esf::expected_size_index;
use crate::estimators::{
    estimate_bc1, estimate_bc2, estimate_nm, Branch, ClipPolicy, EstimatorKind,
};
use crate::numeric::KahanSum;
use crate::sample::{sample_partition, subsample_partition};
use crate::{Error, Result};

/// Default master seed for experiments.
pub const DEFAULT_SEED: u64 = 1_000_003;

/// Full description of a simulation experiment.
///
/// Deserializes from TOML/JSON with every field optional (missing fields take
/// the defaults below) and unknown fields rejected. `N` is accepted for
/// `pop_size` and `i` for `target_index`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Population size `N` at which `R_i` is evaluated.
    #[serde(alias = "N")]
    pub pop_size: usize,
    /// Sample sizes, one row group per value. Canonicalized to sorted order.
    pub n_values: Vec<usize>,
    /// Diversity parameters. Canonicalized to sorted order.
    pub theta_values: Vec<f64>,
    /// Replications per `(n, theta)` cell.
    pub reps: usize,
    /// Master seed; replication streams are derived from it.
    pub seed: u64,
    /// Index `i` of the estimated size index `R_i`.
    #[serde(alias = "i")]
    pub target_index: usize,
    /// Estimators to evaluate, reported in declared order. Only the three
    /// size-index estimators are admissible here.
    pub estimators: Vec<EstimatorKind>,
    pub policy: ClipPolicy,
    /// Draw a size-`N` partition and subsample `n` individuals instead of
    /// sampling the size-`n` partition directly. Distributionally identical
    /// (the family is closed under subsampling) but O(N) per replication;
    /// kept as a cross-check of the direct sampler.
    pub subsample_validation: bool,
}

impl Default for ExperimentConfig {
    /// The study grid: `N = 10^4`, `n` in `{20, 10^2, 10^3}`, fifteen theta
    /// values spanning three decades, `10^4` replications, all three
    /// estimators of `R_1`.
    fn default() -> Self {
        Self {
            pop_size: 10_000,
            n_values: vec![20, 100, 1000],
            theta_values: vec![
                1.0, 3.0, 5.0, 7.0, 9.0, 10.0, 30.0, 50.0, 70.0, 90.0, 100.0, 300.0, 500.0,
                700.0, 900.0,
            ],
            reps: 10_000,
            seed: DEFAULT_SEED,
            target_index: 1,
            estimators: vec![EstimatorKind::Nm, EstimatorKind::Bc1, EstimatorKind::Bc2],
            policy: ClipPolicy::default(),
            subsample_validation: false,
        }
    }
}

impl ExperimentConfig {
    /// Validates every field and normalizes list order: `n_values` and
    /// `theta_values` are sorted ascending and deduplicated, `estimators`
    /// deduplicated keeping first occurrence. Cell indices (and hence
    /// replication streams) are defined on the canonical form.
    pub fn canonicalize(&mut self) -> Result<()> {
        self.policy.validate()?;
        let reason = |reason: String| Error::InvalidConfig { reason };
        if self.pop_size < 2 {
            return Err(reason(format!("pop_size must be >= 2, got {}", self.pop_size)));
        }
        if self.reps == 0 {
            return Err(reason("reps must be >= 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(reason("n_values must be non-empty".into()));
        }
        if self.theta_values.is_empty() {
            return Err(reason("theta_values must be non-empty".into()));
        }
        if self.estimators.is_empty() {
            return Err(reason("estimators must be non-empty".into()));
        }
        if self.target_index < 1 || self.target_index > self.pop_size {
            return Err(reason(format!(
                "target_index must lie in [1, {}], got {}",
                self.pop_size, self.target_index
            )));
        }
        for &n in &self.n_values {
            if n < 2 || n > self.pop_size {
                return Err(reason(format!(
                    "every n must lie in [2, pop_size = {}], got {n}",
                    self.pop_size
                )));
            }
        }
        for &theta in &self.theta_values {
            if !theta.is_finite() || theta <= 0.0 {
                return Err(reason(format!(
                    "every theta must be positive and finite, got {theta}"
                )));
            }
        }
        for &est in &self.estimators {
            if !matches!(
                est,
                EstimatorKind::Nm | EstimatorKind::Bc1 | EstimatorKind::Bc2
            ) {
                return Err(reason(format!(
                    "estimators must be drawn from NM, BC1, BC2; got {est}"
                )));
            }
        }
        self.n_values.sort_unstable();
        self.n_values.dedup();
        self.theta_values
            .sort_unstable_by(|a, b| a.partial_cmp(b).expect("finiteness checked"));
        self.theta_values.dedup();
        let mut seen = Vec::new();
        self.estimators.retain(|est| {
            if seen.contains(est) {
                false
            } else {
                seen.push(*est);
                true
            }
        });
        Ok(())
    }
}

/// Aggregates for one `(n, theta, estimator)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub theta: f64,
    pub pop_size: usize,
    pub target_index: usize,
    pub estimator: EstimatorKind,
    pub reps: usize,
    pub seed: u64,
    /// `mean(v - truth) / truth * 100`.
    pub rb_percent: f64,
    /// `sqrt(mean((v - truth)^2)) / truth * 100`; always `>= |rb_percent|`.
    pub rrmse_percent: f64,
    /// Fraction of strictly negative estimates.
    pub neg_rate: f64,
    /// Monte Carlo standard error of `rb_percent`.
    pub mc_se_rb: f64,
}

/// The four summary statistics on their own, as returned by
/// [`summarize_cell`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellStats {
    pub rb_percent: f64,
    pub rrmse_percent: f64,
    pub neg_rate: f64,
    pub mc_se_rb: f64,
}

/// The random stream owned by replication `rep` of cell `cell_idx` under a
/// master seed. Streams are distinct for `cell_idx` and `rep` below `2^32`
/// and independent of execution order.
pub fn replication_stream(seed: u64, cell_idx: usize, rep: usize) -> ChaCha20Rng {
    debug_assert!(cell_idx < (1 << 32) && rep < (1 << 32));
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(((cell_idx as u64) << 32) | rep as u64);
    rng
}

/// Evaluates the requested size-index estimators at an observed type count.
pub fn evaluate_estimators(
    k: usize,
    n: usize,
    i: usize,
    pop_size: usize,
    estimators: &[EstimatorKind],
    policy: &ClipPolicy,
) -> Result<Vec<(EstimatorKind, f64, Branch)>> {
    estimators
        .iter()
        .map(|&est| {
            let rec = match est {
                EstimatorKind::Nm => estimate_nm(k, n, i, pop_size, policy)?,
                EstimatorKind::Bc1 => estimate_bc1(k, n, i, pop_size, policy)?,
                EstimatorKind::Bc2 => estimate_bc2(k, n, i, pop_size, policy)?,
                other => {
                    return Err(Error::InvalidConfig {
                        reason: format!("estimators must be drawn from NM, BC1, BC2; got {other}"),
                    })
                }
            };
            Ok((est, rec.value, rec.branch))
        })
        .collect()
}

/// One replication: draw a size-`n` partition at `theta` from the given
/// stream, then evaluate each estimator of `R_i` at population size
/// `pop_size`.
pub fn run_replication<R: Rng + ?Sized>(
    n: usize,
    theta: f64,
    pop_size: usize,
    i: usize,
    estimators: &[EstimatorKind],
    policy: &ClipPolicy,
    rng: &mut R,
) -> Result<Vec<(EstimatorKind, f64, Branch)>> {
    let partition = sample_partition(n, theta, rng)?;
    evaluate_estimators(partition.k(), n, i, pop_size, estimators, policy)
}

/// Summary statistics of estimate values against a positive true value.
///
/// `mc_se_rb` uses the sample standard deviation (denominator `len - 1`) and
/// is reported as 0 for a single value.
pub fn summarize_cell(values: &[f64], truth: f64) -> Result<CellStats> {
    if values.is_empty() {
        return Err(Error::EmptyValues);
    }
    if !truth.is_finite() || truth <= 0.0 {
        return Err(Error::NonPositiveTruth { value: truth });
    }
    let len = values.len() as f64;
    let mut dev = KahanSum::new();
    let mut sq = KahanSum::new();
    let mut negatives = 0usize;
    for &v in values {
        let d = v - truth;
        dev.add(d);
        sq.add(d * d);
        if v < 0.0 {
            negatives += 1;
        }
    }
    let mean_dev = dev.value() / len;
    let mc_se_rb = if values.len() > 1 {
        let mut centered = KahanSum::new();
        for &v in values {
            let c = v - truth - mean_dev;
            centered.add(c * c);
        }
        let sample_sd = (centered.value() / (len - 1.0)).sqrt();
        sample_sd / (len.sqrt() * truth) * 100.0
    } else {
        0.0
    };
    Ok(CellStats {
        rb_percent: mean_dev / truth * 100.0,
        rrmse_percent: (sq.value() / len).sqrt() / truth * 100.0,
        neg_rate: negatives as f64 / len,
        mc_se_rb,
    })
}

/// Runs the full experiment grid and returns one row per
/// `(n, theta, estimator)`, ordered by `n` ascending, then `theta`
/// ascending, then estimators in declared order.
///
/// The config is canonicalized on a copy first; cell indices for stream
/// derivation follow the canonical cell order, so the same canonical config
/// yields bit-identical rows regardless of input list order, run count, or
/// worker count.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<CellSummary>> {
    let mut cfg = config.clone();
    cfg.canonicalize()?;
    let mut rows = Vec::with_capacity(cfg.n_values.len() * cfg.theta_values.len());
    let mut cell_idx = 0usize;
    for &n in &cfg.n_values {
        for &theta in &cfg.theta_values {
            rows.extend(run_cell(&cfg, cell_idx, n, theta)?);
            cell_idx += 1;
        }
    }
    Ok(rows)
}

fn run_cell(
    cfg: &ExperimentConfig,
    cell_idx: usize,
    n: usize,
    theta: f64,
) -> Result<Vec<CellSummary>> {
    let ks = draw_type_counts(cfg, cell_idx, n, theta)?;
    // The estimators depend on the data only through k, so evaluate once per
    // distinct type count instead of once per replication.
    let mut cache: BTreeMap<usize, Vec<(EstimatorKind, f64, Branch)>> = BTreeMap::new();
    for &k in &ks {
        if !cache.contains_key(&k) {
            let recs = evaluate_estimators(
                k,
                n,
                cfg.target_index,
                cfg.pop_size,
                &cfg.estimators,
                &cfg.policy,
            )?;
            cache.insert(k, recs);
        }
    }
    let truth = expected_size_index(theta, cfg.target_index, cfg.pop_size)?;
    let mut rows = Vec::with_capacity(cfg.estimators.len());
    for (slot, &estimator) in cfg.estimators.iter().enumerate() {
        let values: Vec<f64> = ks.iter().map(|k| cache[k][slot].1).collect();
        let stats = summarize_cell(&values, truth)?;
        rows.push(CellSummary {
            n,
            theta,
            pop_size: cfg.pop_size,
            target_index: cfg.target_index,
            estimator,
            reps: cfg.reps,
            seed: cfg.seed,
            rb_percent: stats.rb_percent,
            rrmse_percent: stats.rrmse_percent,
            neg_rate: stats.neg_rate,
            mc_se_rb: stats.mc_se_rb,
        });
    }
    Ok(rows)
}

/// Type counts for every replication of one cell, drawn in parallel with
/// order-preserving collection.
fn draw_type_counts(
    cfg: &ExperimentConfig,
    cell_idx: usize,
    n: usize,
    theta: f64,
) -> Result<Vec<usize>> {
    (0..cfg.reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_stream(cfg.seed, cell_idx, rep);
            let drawn = if cfg.subsample_validation {
                sample_partition(cfg.pop_size, theta, &mut rng)
                    .and_then(|pop| subsample_partition(&pop, n, &mut rng))
            } else {
                sample_partition(n, theta, &mut rng)
            };
            drawn.map(|p| p.k()).map_err(|e| Error::ReplicationFailed {
                n,
                theta,
                rep,
                reason: e.to_string(),
            })
        })
        .collect()
}
