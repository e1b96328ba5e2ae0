//! Clipped estimators of the expected size indices, the exact-UMVUE
//! population type-count estimator, and the disclosure-risk quantities.
//!
//! Every estimator is a function of the complete sufficient statistic
//! `K_n = k` alone: solve a score equation for `theta`, then push the root
//! through the target functional under a common clipping scheme. The scheme
//! maps the degenerate `k = 1` case to a fixed value, admissible roots in
//! `(0, C_+]` to a plain plug-in, and everything above `C_+` to the
//! functional evaluated at `C_+`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::esf::{expected_num_types, expected_size_index};
use crate::likelihood::{
    bias_term, solve_adjusted_mle_with, solve_mle_with, SolutionKind, SolverSettings, ThetaSolution,
};
use crate::{Error, Result};

/// Which estimator (or derived quantity) a record reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EstimatorKind {
    /// Plug-in of the maximum-likelihood root ("naive" / NM).
    #[serde(rename = "nm")]
    Nm,
    /// NM minus the additive first-order bias term (BC1).
    #[serde(rename = "bc1")]
    Bc1,
    /// Plug-in of the adjusted-likelihood root (BC2).
    #[serde(rename = "bc2")]
    Bc2,
    /// Expected number of population types at the maximum-likelihood root.
    #[serde(rename = "eta")]
    EtaUmvue,
    /// Sampling-fraction-scaled unique-count estimate.
    #[serde(rename = "risk")]
    Risk,
}

impl EstimatorKind {
    /// Short code used in report rows.
    pub fn code(self) -> &'static str {
        match self {
            Self::Nm => "NM",
            Self::Bc1 => "BC1",
            Self::Bc2 => "BC2",
            Self::EtaUmvue => "EtaUMVUE",
            Self::Risk => "Risk",
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nm" => Ok(Self::Nm),
            "bc1" => Ok(Self::Bc1),
            "bc2" => Ok(Self::Bc2),
            "eta" | "etaumvue" => Ok(Self::EtaUmvue),
            "risk" => Ok(Self::Risk),
            other => Err(Error::InvalidConfig {
                reason: format!("unknown estimator '{other}' (expected nm, bc1, bc2, eta, or risk)"),
            }),
        }
    }
}

/// Which arm of the clipping scheme produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `k = 1`: the scheme's fixed value, no theta estimate.
    K1Zero,
    /// An admissible root in `(0, C_+]`, plugged in directly.
    Interior,
    /// Root absent or beyond `C_+`: functional evaluated at `C_+`.
    ClippedAtCPlus,
    /// Non-positive adjusted solution replaced by the configured floor.
    Floored,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::K1Zero => "K1Zero",
            Self::Interior => "Interior",
            Self::ClippedAtCPlus => "ClippedAtCPlus",
            Self::Floored => "Floored",
        })
    }
}

/// Clipping-scheme constants shared by every estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClipPolicy {
    /// Upper end of the admissible set `(0, C_+]`.
    pub c_plus: f64,
    /// Substitute for non-positive adjusted solutions.
    pub theta_floor: f64,
    /// Value reported at `k = 1` by the size-index and risk estimators.
    pub value_at_k1: f64,
    /// Value reported at `k = 1` by the type-count estimator. `K_N >= 1`
    /// always, so the default is 1 rather than the strict `theta -> 0`
    /// limit of 0; set to 0 for limit behavior.
    pub eta_value_at_k1: f64,
}

impl Default for ClipPolicy {
    fn default() -> Self {
        Self {
            c_plus: 1e6,
            theta_floor: 1e-8,
            value_at_k1: 0.0,
            eta_value_at_k1: 1.0,
        }
    }
}

impl ClipPolicy {
    /// Checks `0 < theta_floor < c_plus` and that every field is finite.
    pub fn validate(&self) -> Result<()> {
        let all_finite = self.c_plus.is_finite()
            && self.theta_floor.is_finite()
            && self.value_at_k1.is_finite()
            && self.eta_value_at_k1.is_finite();
        if !all_finite || self.theta_floor <= 0.0 || self.theta_floor >= self.c_plus {
            return Err(Error::InvalidConfig {
                reason: format!(
                    "clip policy requires finite fields with 0 < theta_floor < c_plus; \
                     got theta_floor = {}, c_plus = {}",
                    self.theta_floor, self.c_plus
                ),
            });
        }
        Ok(())
    }

    /// Solver settings induced by this policy: bracket seeds at the floor
    /// and at `C_+`.
    pub fn solver_settings(&self) -> SolverSettings {
        SolverSettings {
            theta_floor: self.theta_floor,
            theta_ceiling: self.c_plus,
            ..SolverSettings::default()
        }
    }

    fn k1_value(&self, kind: EstimatorKind) -> f64 {
        match kind {
            EstimatorKind::EtaUmvue => self.eta_value_at_k1,
            _ => self.value_at_k1,
        }
    }
}

/// One estimate: the value together with the theta that produced it and the
/// scheme branch taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateRecord {
    pub kind: EstimatorKind,
    pub value: f64,
    /// Theta plugged into the functional; 0 on the `k = 1` branch.
    pub theta_used: f64,
    pub branch: Branch,
}

/// Routes a solver outcome through the clipping scheme.
///
/// `f` must be total on `(0, C_+]`. The branch taken is:
/// * `k = 1` (degenerate solve) — the policy's fixed value, [`Branch::K1Zero`];
/// * degenerate solve with `k > 1` — `f(theta_floor)`, [`Branch::Floored`];
/// * interior root `theta <= C_+` — `f(theta)`, [`Branch::Interior`];
/// * interior root above `C_+`, or divergent — `f(C_+)`,
///   [`Branch::ClippedAtCPlus`].
pub fn apply_scheme<F: Fn(f64) -> f64>(
    kind: EstimatorKind,
    sol: &ThetaSolution,
    f: F,
    policy: &ClipPolicy,
) -> EstimateRecord {
    let (value, theta_used, branch) = match sol.kind {
        SolutionKind::DegenerateZero if sol.k == 1 => (policy.k1_value(kind), 0.0, Branch::K1Zero),
        SolutionKind::DegenerateZero => {
            (f(policy.theta_floor), policy.theta_floor, Branch::Floored)
        }
        SolutionKind::Interior(theta) if theta <= policy.c_plus => {
            (f(theta), theta, Branch::Interior)
        }
        SolutionKind::Interior(_) | SolutionKind::DivergentAbove => {
            (f(policy.c_plus), policy.c_plus, Branch::ClippedAtCPlus)
        }
    };
    EstimateRecord {
        kind,
        value,
        theta_used,
        branch,
    }
}

/// NM estimator of `R_i`: size index at the maximum-likelihood root.
pub fn estimate_nm(
    k: usize,
    n: usize,
    i: usize,
    pop_size: usize,
    policy: &ClipPolicy,
) -> Result<EstimateRecord> {
    check_inputs(n, i, pop_size, policy)?;
    let sol = solve_mle_with(k, n, &policy.solver_settings())?;
    Ok(apply_scheme(
        EstimatorKind::Nm,
        &sol,
        |theta| expected_size_index(theta, i, pop_size).expect("arguments validated"),
        policy,
    ))
}

/// BC1 estimator: NM minus the additive bias term `B_i` at the same root.
pub fn estimate_bc1(
    k: usize,
    n: usize,
    i: usize,
    pop_size: usize,
    policy: &ClipPolicy,
) -> Result<EstimateRecord> {
    check_inputs(n, i, pop_size, policy)?;
    let sol = solve_mle_with(k, n, &policy.solver_settings())?;
    Ok(apply_scheme(
        EstimatorKind::Bc1,
        &sol,
        |theta| {
            expected_size_index(theta, i, pop_size).expect("arguments validated")
                - bias_term(theta, i, pop_size, n).expect("arguments validated")
        },
        policy,
    ))
}

/// BC2 estimator: size index at the adjusted-likelihood root.
pub fn estimate_bc2(
    k: usize,
    n: usize,
    i: usize,
    pop_size: usize,
    policy: &ClipPolicy,
) -> Result<EstimateRecord> {
    check_inputs(n, i, pop_size, policy)?;
    let sol = solve_adjusted_mle_with(k, n, &policy.solver_settings())?;
    Ok(apply_scheme(
        EstimatorKind::Bc2,
        &sol,
        |theta| expected_size_index(theta, i, pop_size).expect("arguments validated"),
        policy,
    ))
}

/// Expected number of population types at the maximum-likelihood root. With
/// `N = n` this is the exact UMVUE of the expected type count; the `k = 1`
/// branch reports `policy.eta_value_at_k1`.
pub fn estimate_population_num_types(
    k: usize,
    n: usize,
    pop_size: usize,
    policy: &ClipPolicy,
) -> Result<EstimateRecord> {
    check_inputs(n, 1, pop_size, policy)?;
    let sol = solve_mle_with(k, n, &policy.solver_settings())?;
    Ok(apply_scheme(
        EstimatorKind::EtaUmvue,
        &sol,
        |theta| expected_num_types(theta, pop_size).expect("arguments validated"),
        policy,
    ))
}

/// Disclosure-risk estimate: the unique-count estimate `R^_1` scaled by the
/// known sampling fraction `f = n / N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskEstimate {
    /// Which unique-count estimator was scaled.
    pub scheme: EstimatorKind,
    /// `f = n / N`.
    pub sampling_fraction: f64,
    /// The raw population-unique estimate.
    pub r1: EstimateRecord,
    /// `f * r1.value`.
    pub risk: f64,
}

impl RiskEstimate {
    /// The risk as a record of its own, inheriting theta and branch from the
    /// underlying `R^_1` estimate.
    pub fn record(&self) -> EstimateRecord {
        EstimateRecord {
            kind: EstimatorKind::Risk,
            value: self.risk,
            theta_used: self.r1.theta_used,
            branch: self.r1.branch,
        }
    }
}

/// Per-record disclosure risk `f * R^_1` under the chosen scheme
/// (NM, BC1, or BC2).
pub fn population_unique_risk(
    k: usize,
    n: usize,
    pop_size: usize,
    scheme: EstimatorKind,
    policy: &ClipPolicy,
) -> Result<RiskEstimate> {
    let r1 = match scheme {
        EstimatorKind::Nm => estimate_nm(k, n, 1, pop_size, policy)?,
        EstimatorKind::Bc1 => estimate_bc1(k, n, 1, pop_size, policy)?,
        EstimatorKind::Bc2 => estimate_bc2(k, n, 1, pop_size, policy)?,
        other => {
            return Err(Error::InvalidConfig {
                reason: format!("risk scheme must be NM, BC1, or BC2; got {other}"),
            })
        }
    };
    let sampling_fraction = n as f64 / pop_size as f64;
    Ok(RiskEstimate {
        scheme,
        sampling_fraction,
        r1,
        risk: sampling_fraction * r1.value,
    })
}

fn check_inputs(n: usize, i: usize, pop_size: usize, policy: &ClipPolicy) -> Result<()> {
    policy.validate()?;
    if n < 2 {
        return Err(Error::SampleTooSmall { n });
    }
    if i < 1 || i > pop_size {
        return Err(Error::OutOfRange {
            what: "i",
            lo: 1,
            hi: pop_size,
            got: i,
        });
    }
    if n > pop_size {
        return Err(Error::OutOfRange {
            what: "n",
            lo: 2,
            hi: pop_size,
            got: n,
        });
    }
    Ok(())
}
