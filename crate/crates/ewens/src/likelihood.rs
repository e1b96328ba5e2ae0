//! Score equations, information quantities, and diversity-parameter solvers.
//!
//! Given `K_n = k`, the log-likelihood of `theta` is `k ln theta -
//! ln theta^{[n]}` up to terms free of `theta`. In the natural parameter
//! `xi = ln theta` the score
//!
//! ```text
//! k - n + sum_{j=2}^n (j - 1) / (e^xi + j - 1)
//! ```
//!
//! is strictly decreasing with limits `k - 1` and `k - n`, so an interior
//! root exists exactly when `1 < k < n` and brackets cleanly. The adjusted
//! likelihood adds a penalty whose `theta`-derivative is `-S_3 / S_2` with
//! `S_m = sum_{j=2}^n (j - 1) / (theta + j - 1)^m`; its `xi`-score has limits
//! `k - 1` and `k - n - 1`, so the adjusted root is interior for every
//! `2 <= k <= n`.

use crate::esf::{check_theta, expected_size_index};
use crate::numeric::KahanSum;
use crate::{Error, Result};

/// Hard limits for bracket expansion in xi space; exp(700) is near the f64
/// ceiling, exp(-700) near the smallest normal.
const XI_MIN: f64 = -700.0;
const XI_MAX: f64 = 700.0;
/// ln(1e4): one geometric expansion step widens a bracket end by 10^4.
const EXPAND_STEP: f64 = 9.210340371976184;
/// Probe points used to certify a unique sign change on adjusted brackets.
const BRACKET_PROBES: usize = 64;

/// Tolerances and brackets for the score-equation solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    /// Bisection stops once the xi interval is at most this wide.
    pub xi_tol: f64,
    /// Iteration cap for bisection.
    pub max_iter: u32,
    /// Lower bracket seed; also the floor substituted for degenerate
    /// adjusted solutions downstream.
    pub theta_floor: f64,
    /// Upper bracket seed; adjusted roots beyond it count as divergent.
    pub theta_ceiling: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            xi_tol: 1e-12,
            max_iter: 200,
            theta_floor: 1e-8,
            theta_ceiling: 1e6,
        }
    }
}

/// Classification of a score-equation solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolutionKind {
    /// A positive finite root of the score equation.
    Interior(f64),
    /// No positive root: the score is negative throughout. Arises for
    /// `k = 1`, or when an adjusted solve collapses below every bracket.
    DegenerateZero,
    /// No admissible root above: the score stays positive up to the
    /// expansion limit (`k = n` for the plain likelihood), or the adjusted
    /// root lies beyond the configured ceiling.
    DivergentAbove,
}

/// Outcome of a solve, carrying the sufficient statistic that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaSolution {
    pub kind: SolutionKind,
    /// Bisection iterations performed (zero for non-interior outcomes).
    pub iterations: u32,
    /// Score value at the returned root; NaN for non-interior outcomes.
    pub residual: f64,
    /// The type count `k` the solve was run for. Downstream clipping uses it
    /// to distinguish the `k = 1` zero branch from a floored degenerate
    /// adjusted solution.
    pub k: usize,
}

impl ThetaSolution {
    fn terminal(kind: SolutionKind, k: usize) -> Self {
        Self {
            kind,
            iterations: 0,
            residual: f64::NAN,
            k,
        }
    }
}

/// Fisher-type information and adjustment quantities at `(theta, n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoSummary {
    /// `g_xi = -d^2 l / d xi^2 > 0`.
    pub g_xi: f64,
    /// `d g_xi / d xi`.
    pub dg_xi: f64,
    /// `-S_3 / S_2 < 0`, the adjustment term's theta-derivative.
    pub adj_score_theta: f64,
}

/// Score in `theta`: `k / theta - sum_{j=1}^n 1 / (theta + j - 1)`.
pub fn score_theta(k: usize, n: usize, theta: f64) -> Result<f64> {
    check_k(k, n)?;
    check_theta(theta)?;
    let mut acc = KahanSum::new();
    acc.add(k as f64 / theta);
    for j in 1..=n {
        acc.add(-1.0 / (theta + (j - 1) as f64));
    }
    Ok(acc.value())
}

/// Score in the natural parameter:
/// `k - n + sum_{j=2}^n (j - 1) / (e^xi + j - 1)`.
///
/// Defined for every real `xi`, with limits `k - 1` as `xi -> -inf` and
/// `k - n` as `xi -> +inf`; equals `theta * score_theta` at `theta = e^xi`.
pub fn score_xi(k: usize, n: usize, xi: f64) -> Result<f64> {
    check_k(k, n)?;
    let theta = xi.exp();
    let mut acc = KahanSum::new();
    acc.add(k as f64 - n as f64);
    for j in 2..=n {
        let over = (j - 1) as f64;
        acc.add(over / (theta + over));
    }
    Ok(acc.value())
}

/// `g_xi = sum_{j=2}^n theta (j - 1) / (theta + j - 1)^2`, the negated
/// second xi-derivative of the log-likelihood. Strictly positive for
/// `n >= 2`.
pub fn fisher_info_xi(theta: f64, n: usize) -> Result<f64> {
    check_theta(theta)?;
    check_n2(n)?;
    let mut acc = KahanSum::new();
    for j in 2..=n {
        let over = (j - 1) as f64;
        let d = theta + over;
        acc.add(theta * over / (d * d));
    }
    Ok(acc.value())
}

/// `d g_xi / d xi = sum_{j=2}^n theta (j - 1)(j - 1 - theta) / (theta + j - 1)^3`.
pub fn dg_xi(theta: f64, n: usize) -> Result<f64> {
    check_theta(theta)?;
    check_n2(n)?;
    let mut acc = KahanSum::new();
    for j in 2..=n {
        let over = (j - 1) as f64;
        let d = theta + over;
        acc.add(theta * over * (over - theta) / (d * d * d));
    }
    Ok(acc.value())
}

/// The adjustment term's derivative `-S_3 / S_2`, with
/// `S_m = sum_{j=2}^n (j - 1) / (theta + j - 1)^m`. Strictly negative, and
/// `theta * adjustment_score -> -1` as `theta -> inf`.
pub fn adjustment_score(theta: f64, n: usize) -> Result<f64> {
    check_theta(theta)?;
    check_n2(n)?;
    Ok(-adjusted_penalty_xi(theta, n) / theta)
}

/// `B_i(theta) = S_3 / S_2^2 * R_i(theta, N)`: the additive bias term,
/// combining sample-size-`n` sums with the population-size-`N` size index.
pub fn bias_term(theta: f64, i: usize, pop_size: usize, n: usize) -> Result<f64> {
    check_theta(theta)?;
    check_n2(n)?;
    let s2 = s_sum(2, theta, n);
    let s3 = s_sum(3, theta, n);
    Ok(s3 / (s2 * s2) * expected_size_index(theta, i, pop_size)?)
}

/// Bundles `g_xi`, its xi-derivative, and the adjustment score.
pub fn info_summary(theta: f64, n: usize) -> Result<InfoSummary> {
    Ok(InfoSummary {
        g_xi: fisher_info_xi(theta, n)?,
        dg_xi: dg_xi(theta, n)?,
        adj_score_theta: adjustment_score(theta, n)?,
    })
}

/// Maximum-likelihood estimate of `theta` from `k` types in `n` samples,
/// using default [`SolverSettings`].
pub fn solve_mle(k: usize, n: usize) -> Result<ThetaSolution> {
    solve_mle_with(k, n, &SolverSettings::default())
}

/// Maximum-likelihood solve with explicit settings.
///
/// `k = 1` yields [`SolutionKind::DegenerateZero`], `k = n`
/// [`SolutionKind::DivergentAbove`]; every other `k` has an interior root of
/// the strictly decreasing xi-score, found by bracketing and bisection.
pub fn solve_mle_with(k: usize, n: usize, settings: &SolverSettings) -> Result<ThetaSolution> {
    check_k(k, n)?;
    check_n2(n)?;
    if k == 1 {
        return Ok(ThetaSolution::terminal(SolutionKind::DegenerateZero, k));
    }
    if k == n {
        return Ok(ThetaSolution::terminal(SolutionKind::DivergentAbove, k));
    }
    let score = |xi: f64| score_xi(k, n, xi).expect("arguments validated");
    Ok(solve_decreasing(&score, k, settings, false))
}

/// Adjusted maximum-likelihood estimate with default [`SolverSettings`].
pub fn solve_adjusted_mle(k: usize, n: usize) -> Result<ThetaSolution> {
    solve_adjusted_mle_with(k, n, &SolverSettings::default())
}

/// Adjusted maximum-likelihood solve: root of the score plus the adjustment
/// term, in xi space. Interior for every `2 <= k <= n`; a located root above
/// the ceiling is reported as [`SolutionKind::DivergentAbove`] and a
/// non-positive numeric solution as [`SolutionKind::DegenerateZero`].
///
/// # Panics
/// Uniqueness of the adjusted root has no published proof. The solver probes
/// the bracket on a 64-point grid and panics if it sees more than one sign
/// change rather than silently returning an arbitrary root.
pub fn solve_adjusted_mle_with(
    k: usize,
    n: usize,
    settings: &SolverSettings,
) -> Result<ThetaSolution> {
    check_k(k, n)?;
    check_n2(n)?;
    if k == 1 {
        return Ok(ThetaSolution::terminal(SolutionKind::DegenerateZero, k));
    }
    let score = |xi: f64| {
        // xi-form of the adjusted score: theta * (score_theta + adjustment),
        // with limits k - 1 (xi -> -inf) and k - n - 1 (xi -> +inf).
        let theta = xi.exp();
        let base = score_xi(k, n, xi).expect("arguments validated");
        base - adjusted_penalty_xi(theta, n)
    };
    let mut sol = solve_decreasing(&score, k, settings, true);
    if let SolutionKind::Interior(theta) = sol.kind {
        if theta > settings.theta_ceiling {
            sol = ThetaSolution::terminal(SolutionKind::DivergentAbove, k);
        }
    }
    Ok(sol)
}

/// `theta * S_3 / S_2`, evaluated so that neither the tiny-theta nor the
/// huge-theta end of an expanded bracket overflows the cubed denominators.
fn adjusted_penalty_xi(theta: f64, n: usize) -> f64 {
    let mut num = KahanSum::new();
    let mut den = KahanSum::new();
    if theta > 1e100 {
        // Normalize each denominator by theta: (1 + (j-1)/theta)^3 stays
        // bounded, and the leading theta powers cancel in the ratio.
        for j in 2..=n {
            let over = (j - 1) as f64;
            let scale = 1.0 + over / theta;
            num.add(over / (scale * scale * scale));
            den.add(over / (scale * scale));
        }
        num.value() / den.value()
    } else {
        for j in 2..=n {
            let over = (j - 1) as f64;
            let d = theta + over;
            num.add(over / (d * d * d));
            den.add(over / (d * d));
        }
        theta * num.value() / den.value()
    }
}

fn s_sum(power: i32, theta: f64, n: usize) -> f64 {
    let mut acc = KahanSum::new();
    for j in 2..=n {
        let over = (j - 1) as f64;
        acc.add(over / (theta + over).powi(power));
    }
    acc.value()
}

/// Bracketing bisection for a decreasing score: positive at the lower end,
/// negative at the upper end. Expands geometrically from the seed bracket and
/// classifies the degenerate/divergent cases if no sign change appears.
fn solve_decreasing<F: Fn(f64) -> f64>(
    score: &F,
    k: usize,
    settings: &SolverSettings,
    probe_bracket: bool,
) -> ThetaSolution {
    let mut lo = settings.theta_floor.ln().max(XI_MIN);
    let mut hi = settings.theta_ceiling.ln().min(XI_MAX);
    let mut f_lo = score(lo);
    let mut f_hi = score(hi);
    while f_lo <= 0.0 && lo > XI_MIN {
        lo = (lo - EXPAND_STEP).max(XI_MIN);
        f_lo = score(lo);
    }
    while f_hi >= 0.0 && hi < XI_MAX {
        hi = (hi + EXPAND_STEP).min(XI_MAX);
        f_hi = score(hi);
    }
    if f_lo <= 0.0 {
        return ThetaSolution::terminal(SolutionKind::DegenerateZero, k);
    }
    if f_hi >= 0.0 {
        return ThetaSolution::terminal(SolutionKind::DivergentAbove, k);
    }
    if probe_bracket {
        assert_unique_sign_change(score, lo, hi);
    }
    let mut iterations = 0;
    while hi - lo > settings.xi_tol && iterations < settings.max_iter {
        let mid = 0.5 * (lo + hi);
        if score(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let root = 0.5 * (lo + hi);
    ThetaSolution {
        kind: SolutionKind::Interior(root.exp()),
        iterations,
        residual: score(root),
        k,
    }
}

/// Refuses to bisect a bracket containing more than one sign change: that
/// would mean the adjusted score has multiple roots, and picking one silently
/// would mask the problem.
fn assert_unique_sign_change<F: Fn(f64) -> f64>(score: &F, lo: f64, hi: f64) {
    let mut changes = 0;
    let mut prev_positive = score(lo) > 0.0;
    for p in 1..BRACKET_PROBES {
        let x = lo + (hi - lo) * p as f64 / (BRACKET_PROBES - 1) as f64;
        let positive = score(x) > 0.0;
        if positive != prev_positive {
            changes += 1;
        }
        prev_positive = positive;
    }
    assert!(
        changes == 1,
        "adjusted score changed sign {changes} times on [{lo}, {hi}]; \
         the adjusted-likelihood root is not unique on this bracket"
    );
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroArgument { what: "n" });
    }
    if k < 1 || k > n {
        return Err(Error::OutOfRange {
            what: "k",
            lo: 1,
            hi: n,
            got: k,
        });
    }
    Ok(())
}

fn check_n2(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::SampleTooSmall { n });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esf::expected_num_types;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn interior(sol: &ThetaSolution) -> f64 {
        match sol.kind {
            SolutionKind::Interior(theta) => theta,
            other => panic!("expected an interior root, got {other:?}"),
        }
    }

    #[test]
    fn score_theta_hand_values() {
        assert_relative_eq!(score_theta(2, 3, 1.0).unwrap(), 1.0 / 6.0);
        for &theta in &[0.2, 1.0, 30.0] {
            assert_relative_eq!(
                score_theta(1, 2, theta).unwrap(),
                -1.0 / (theta + 1.0),
                max_relative = 1e-12
            );
        }
        assert!(score_theta(0, 3, 1.0).is_err());
        assert!(score_theta(4, 3, 1.0).is_err());
        assert!(score_theta(2, 3, 0.0).is_err());
    }

    #[test]
    fn score_xi_hand_values_and_limits() {
        assert_relative_eq!(score_xi(2, 3, 0.0).unwrap(), 1.0 / 6.0);
        for (k, n) in [(2, 5), (3, 9), (7, 12)] {
            assert_abs_diff_eq!(
                score_xi(k, n, -60.0).unwrap(),
                (k - 1) as f64,
                epsilon = 1e-9
            );
            assert_abs_diff_eq!(
                score_xi(k, n, 60.0).unwrap(),
                k as f64 - n as f64,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn score_xi_is_the_theta_score_by_chain_rule() {
        for (k, n) in [(2, 4), (5, 9), (11, 30)] {
            for &xi in &[-3.0f64, -0.4, 0.0, 1.7, 4.0] {
                let theta = xi.exp();
                assert_relative_eq!(
                    score_xi(k, n, xi).unwrap(),
                    theta * score_theta(k, n, theta).unwrap(),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn fisher_info_hand_values_and_positivity() {
        assert_relative_eq!(fisher_info_xi(1.0, 2).unwrap(), 0.25);
        assert_relative_eq!(
            fisher_info_xi(1.4142135623730951, 3).unwrap(),
            0.4852813742385704,
            max_relative = 1e-12
        );
        for n in 2..=50 {
            for &theta in &[0.1, 1.0, 12.0] {
                assert!(fisher_info_xi(theta, n).unwrap() > 0.0);
            }
        }
        assert!(fisher_info_xi(1.0, 1).is_err());
    }

    #[test]
    fn fisher_info_matches_score_differences() {
        for (k, n) in [(2, 6), (4, 15)] {
            for &xi in &[-1.0, 0.3, 2.0] {
                let h = 1e-5;
                let slope = (score_xi(k, n, xi + h).unwrap() - score_xi(k, n, xi - h).unwrap())
                    / (2.0 * h);
                assert_relative_eq!(
                    fisher_info_xi(xi.exp(), n).unwrap(),
                    -slope,
                    max_relative = 1e-6
                );
            }
        }
    }

    #[test]
    fn dg_hand_values_and_finite_differences() {
        assert_eq!(dg_xi(1.0, 2).unwrap(), 0.0);
        assert_relative_eq!(dg_xi(1.0, 3).unwrap(), 2.0 / 27.0, max_relative = 1e-12);
        for &xi in &[-0.7f64, 0.0, 1.2] {
            let h = 1e-5;
            let slope = (fisher_info_xi((xi + h).exp(), 9).unwrap()
                - fisher_info_xi((xi - h).exp(), 9).unwrap())
                / (2.0 * h);
            assert_relative_eq!(dg_xi(xi.exp(), 9).unwrap(), slope, max_relative = 1e-5);
        }
    }

    #[test]
    fn adjustment_score_hand_values_and_sign() {
        assert_relative_eq!(adjustment_score(1.0, 2).unwrap(), -0.5);
        for n in [2, 5, 20, 50] {
            for &theta in &[0.1, 1.0, 10.0, 1e5] {
                assert!(adjustment_score(theta, n).unwrap() < 0.0);
            }
        }
    }

    #[test]
    fn adjustment_score_asymptote_is_minus_one_over_theta() {
        for &theta in &[1e6, 1e150, 1e300] {
            let scaled = theta * adjustment_score(theta, 40).unwrap();
            assert_relative_eq!(scaled, -1.0, max_relative = 1e-4);
        }
    }

    #[test]
    fn bias_term_hand_value_is_population_free_at_theta_one() {
        // S_3 / S_2^2 at (theta=1, n=3) is (1/8 + 2/27) / (1/4 + 2/9)^2 =
        // 258/289, and R_1(1, N) = 1 for every N.
        for &pop in &[10_usize, 777, 10_000] {
            assert_relative_eq!(
                bias_term(1.0, 1, pop, 3).unwrap(),
                258.0 / 289.0,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn bias_term_is_positive_and_vanishes_slowly() {
        for &theta in &[0.3, 1.0, 8.0] {
            for n in [2, 10, 100] {
                assert!(bias_term(theta, 1, 1000, n).unwrap() > 0.0);
            }
        }
        // O(1 / (log n)^2) decay leaves it clearly below 0.05 by n = 1000.
        let b = bias_term(1.0, 1, 10_000, 1000).unwrap();
        assert!(b < 0.05, "B_1 = {b}");
        assert_relative_eq!(b, 0.012949362281762732, max_relative = 1e-10);
    }

    #[test]
    fn info_summary_bundles_the_three_quantities() {
        let info = info_summary(2.0, 12).unwrap();
        assert_eq!(info.g_xi, fisher_info_xi(2.0, 12).unwrap());
        assert_eq!(info.dg_xi, dg_xi(2.0, 12).unwrap());
        assert_eq!(info.adj_score_theta, adjustment_score(2.0, 12).unwrap());
        assert!(info.g_xi > 0.0 && info.adj_score_theta < 0.0);
    }

    #[test]
    fn mle_closed_form_root_of_two() {
        // At (k, n) = (2, 3) the score equation reduces to theta^2 = 2.
        let sol = solve_mle(2, 3).unwrap();
        let theta = interior(&sol);
        assert_abs_diff_eq!(theta, 2.0_f64.sqrt(), epsilon = 1e-10);
        assert!(sol.residual.abs() < 1e-9);
        assert!(sol.iterations <= 200);
        assert_eq!(sol.k, 2);
    }

    #[test]
    fn mle_degenerate_and_divergent_cases() {
        for n in [2, 5, 40] {
            assert_eq!(
                solve_mle(1, n).unwrap().kind,
                SolutionKind::DegenerateZero,
                "k=1"
            );
            assert_eq!(
                solve_mle(n, n).unwrap().kind,
                SolutionKind::DivergentAbove,
                "k=n"
            );
        }
        assert!(solve_mle(2, 1).is_err());
        assert!(solve_mle(0, 5).is_err());
        assert!(solve_mle(6, 5).is_err());
    }

    #[test]
    fn mle_another_frozen_root() {
        let theta = interior(&solve_mle(3, 5).unwrap());
        assert_abs_diff_eq!(theta, 2.225435030782835, epsilon = 1e-9);
    }

    #[test]
    fn mle_satisfies_the_type_count_identity() {
        // The score equation is exactly eta_n(theta) = k.
        for n in 3..=50 {
            for k in 2..n {
                let theta = interior(&solve_mle(k, n).unwrap());
                let eta = expected_num_types(theta, n).unwrap();
                assert_abs_diff_eq!(eta, k as f64, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn mle_is_strictly_increasing_in_k() {
        for n in [10, 30] {
            let mut prev = 0.0;
            for k in 2..n {
                let theta = interior(&solve_mle(k, n).unwrap());
                assert!(theta > prev, "theta({k},{n}) = {theta} <= {prev}");
                prev = theta;
            }
        }
    }

    #[test]
    fn score_xi_is_strictly_decreasing() {
        for (k, n) in [(2, 6), (9, 17)] {
            let mut prev = f64::INFINITY;
            for step in 0..=40 {
                let xi = -10.0 + step as f64 * 0.5;
                let value = score_xi(k, n, xi).unwrap();
                assert!(value < prev, "score not decreasing at xi={xi}");
                prev = value;
            }
        }
    }

    #[test]
    fn adjusted_closed_form_unit_root() {
        // At (k, n) = (2, 2) the adjusted score reduces to
        // 1/theta - 2/(theta + 1) = 0, so theta = 1.
        let sol = solve_adjusted_mle(2, 2).unwrap();
        assert_abs_diff_eq!(interior(&sol), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn adjusted_another_frozen_root() {
        let theta = interior(&solve_adjusted_mle(3, 5).unwrap());
        assert_abs_diff_eq!(theta, 1.4317900074698837, epsilon = 1e-9);
    }

    #[test]
    fn adjusted_root_exists_even_at_k_equals_n() {
        let theta = interior(&solve_adjusted_mle(20, 20).unwrap());
        assert!(
            (150.0..230.0).contains(&theta),
            "theta_A(20, 20) = {theta}, expected near 189.8"
        );
        assert_abs_diff_eq!(theta, 189.7994130432164, epsilon = 1e-6);
    }

    #[test]
    fn adjusted_k1_is_degenerate() {
        for n in [2, 7, 31] {
            assert_eq!(
                solve_adjusted_mle(1, n).unwrap().kind,
                SolutionKind::DegenerateZero
            );
        }
    }

    #[test]
    fn adjusted_root_is_interior_across_the_probe_grid() {
        for n in 2..=50 {
            for k in 2..=n {
                let sol = solve_adjusted_mle(k, n).unwrap();
                let theta = interior(&sol);
                assert!(theta > 0.0 && theta <= 1e6);
                assert!(sol.residual.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn adjusted_root_shrinks_the_mle() {
        // The added score term is strictly negative, so theta_A < theta_ML.
        for n in [5, 12, 40] {
            for k in 2..n {
                let ml = interior(&solve_mle(k, n).unwrap());
                let adjusted = interior(&solve_adjusted_mle(k, n).unwrap());
                assert!(
                    adjusted < ml,
                    "theta_A({k},{n}) = {adjusted} >= theta_ML = {ml}"
                );
            }
        }
    }

    #[test]
    fn adjusted_root_beyond_the_ceiling_reports_divergent() {
        // theta_A(n, n) grows like n(n-1)/2; a tiny ceiling forces the
        // divergent classification.
        let settings = SolverSettings {
            theta_ceiling: 10.0,
            ..SolverSettings::default()
        };
        let sol = solve_adjusted_mle_with(20, 20, &settings).unwrap();
        assert_eq!(sol.kind, SolutionKind::DivergentAbove);
    }

    #[test]
    fn solver_respects_a_custom_tolerance() {
        let settings = SolverSettings {
            xi_tol: 1e-6,
            ..SolverSettings::default()
        };
        let loose = interior(&solve_mle_with(7, 19, &settings).unwrap());
        let tight = interior(&solve_mle(7, 19).unwrap());
        assert_abs_diff_eq!(loose, tight, epsilon = 1e-4);
    }
}
