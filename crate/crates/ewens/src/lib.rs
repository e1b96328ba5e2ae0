//! Exact combinatorics and estimation for the Ewens sampling formula.
//!
//! The Ewens distribution with diversity parameter `theta > 0` governs the
//! random integer partitions that arise as the frequency-of-frequencies of an
//! exchangeable sample of types. This crate provides:
//!
//! - exact partition-level and type-count probability mass functions,
//!   expectations, and log-space Stirling number tables ([`partition`],
//!   [`stirling`], [`esf`]);
//! - a sequential partition sampler and hypergeometric subsampling
//!   ([`sample`]);
//! - score equations, information quantities, and root solvers for the
//!   maximum-likelihood and adjusted maximum-likelihood estimates of the
//!   diversity parameter ([`likelihood`]);
//! - clipped plug-in estimators of the expected size indices `R_i`, with
//!   additive and adjustment-based bias corrections, plus population-unique
//!   disclosure-risk quantities ([`estimators`]);
//! - a deterministic parallel Monte Carlo harness for relative-bias /
//!   relative-RMSE / negative-rate studies ([`montecarlo`]).
//!
//! All probability mass is computed in natural-log space, and every sampler
//! takes an explicit random stream so parallel callers stay reproducible.

pub mod esf;
pub mod estimators;
pub mod likelihood;
pub mod montecarlo;
pub mod numeric;
pub mod partition;
pub mod sample;
pub mod stirling;

pub use esf::{
    d2_theta_expected_size_index, d_theta_expected_size_index, ewens_log_pmf, expected_num_types,
    expected_size_index, kn_log_pmf, log_pochhammer, ModelParams,
};
pub use estimators::{
    apply_scheme, estimate_bc1, estimate_bc2, estimate_nm, estimate_population_num_types,
    population_unique_risk, Branch, ClipPolicy, EstimateRecord, EstimatorKind, RiskEstimate,
};
pub use likelihood::{
    adjustment_score, bias_term, dg_xi, fisher_info_xi, info_summary, score_theta, score_xi,
    solve_adjusted_mle, solve_adjusted_mle_with, solve_mle, solve_mle_with, InfoSummary,
    SolutionKind, SolverSettings, ThetaSolution,
};
pub use montecarlo::{
    replication_stream, run_experiment, run_replication, summarize_cell, CellStats, CellSummary,
    ExperimentConfig,
};
pub use partition::{enumerate_partitions, enumerate_partitions_with_cap, Partition};
pub use sample::{sample_partition, subsample_partition};
pub use stirling::{shared_table, stirling1_log_table, stirling1_log_table_with_cap, StirlingTable};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The diversity parameter must be a positive finite real.
    #[error("theta must be positive and finite, got {value}")]
    NonPositiveTheta { value: f64 },
    /// Score equations and information quantities require `n >= 2`.
    #[error("sample size must be at least 2, got {n}")]
    SampleTooSmall { n: usize },
    /// An argument that must be a positive count was zero.
    #[error("{what} must be at least 1")]
    ZeroArgument { what: &'static str },
    /// An integer argument fell outside its admissible interval.
    #[error("{what} must lie in [{lo}, {hi}], got {got}")]
    OutOfRange {
        what: &'static str,
        lo: usize,
        hi: usize,
        got: usize,
    },
    /// A partition failed structural validation.
    #[error("invalid partition: {reason}")]
    InvalidPartition { reason: String },
    /// A combinatorial table or enumeration request exceeded its cap.
    #[error("{what} {requested} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    /// Summary statistics require a strictly positive true value.
    #[error("true value must be positive and finite, got {value}")]
    NonPositiveTruth { value: f64 },
    /// Summary statistics require at least one replication value.
    #[error("cannot summarize an empty list of values")]
    EmptyValues,
    /// An experiment configuration failed validation.
    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },
    /// A Monte Carlo replication could not be evaluated.
    #[error("replication {rep} failed at n={n}, theta={theta}: {reason}")]
    ReplicationFailed {
        n: usize,
        theta: f64,
        rep: usize,
        reason: String,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
