//! The Ewens sampling formula: probability mass functions and moments.
//!
//! For a sample of size `n` with frequency-of-frequencies `s`, the partition
//! law is
//!
//! ```text
//! P(S = s) = n! theta^k / theta^{[n]} * prod_j 1 / (j^{s_j} s_j!)
//! ```
//!
//! with rising factorial `theta^{[n]} = prod_{j=1}^n (theta + j - 1)`, and the
//! number of distinct types follows
//! `P(K_n = k) = theta^k s(n, k) / theta^{[n]}` via unsigned Stirling numbers
//! of the first kind. Expected size indices obey Watterson's formula
//! `R_i = (theta / i) prod_{j=1}^i (N - j + 1) / (theta + N - j)`.

use crate::numeric::{ln_factorial, KahanSum};
use crate::partition::Partition;
use crate::stirling::StirlingTable;
use crate::{Error, Result};

/// Validated model parameters: diversity `theta` (with its natural parameter
/// `xi = ln theta`), population size `N`, and sample size `n` with
/// `2 <= n <= N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    theta: f64,
    xi: f64,
    pop_size: usize,
    sample_size: usize,
}

impl ModelParams {
    /// Validates `theta > 0` (finite) and `2 <= sample_size <= pop_size`.
    pub fn new(theta: f64, pop_size: usize, sample_size: usize) -> Result<Self> {
        check_theta(theta)?;
        Self::check_sizes(pop_size, sample_size)?;
        Ok(Self {
            theta,
            xi: theta.ln(),
            pop_size,
            sample_size,
        })
    }

    /// Same validation, parameterized by `xi = ln theta`.
    pub fn from_xi(xi: f64, pop_size: usize, sample_size: usize) -> Result<Self> {
        let theta = xi.exp();
        check_theta(theta)?;
        Self::check_sizes(pop_size, sample_size)?;
        Ok(Self {
            theta,
            xi,
            pop_size,
            sample_size,
        })
    }

    fn check_sizes(pop_size: usize, sample_size: usize) -> Result<()> {
        if sample_size < 2 {
            return Err(Error::SampleTooSmall { n: sample_size });
        }
        if sample_size > pop_size {
            return Err(Error::OutOfRange {
                what: "sample size",
                lo: 2,
                hi: pop_size,
                got: sample_size,
            });
        }
        Ok(())
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn pop_size(&self) -> usize {
        self.pop_size
    }

    pub fn sample_size(&self) -> usize {
        self.sample_size
    }
}

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if !(theta.is_finite() && theta > 0.0) {
        return Err(Error::NonPositiveTheta { value: theta });
    }
    Ok(())
}

/// `ln theta^{[m]} = sum_{j=1}^m ln(theta + j - 1)`.
pub fn log_pochhammer(theta: f64, m: usize) -> Result<f64> {
    check_theta(theta)?;
    if m == 0 {
        return Err(Error::ZeroArgument { what: "m" });
    }
    let mut acc = KahanSum::new();
    for j in 1..=m {
        acc.add((theta + (j - 1) as f64).ln());
    }
    Ok(acc.value())
}

/// Log-probability of a partition under the Ewens distribution.
pub fn ewens_log_pmf(p: &Partition, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let mut acc = KahanSum::new();
    acc.add(ln_factorial(p.n()));
    acc.add(p.k() as f64 * theta.ln());
    acc.add(-log_pochhammer(theta, p.n())?);
    for (i, m) in p.iter() {
        acc.add(-((m as f64) * (i as f64).ln()));
        acc.add(-ln_factorial(m));
    }
    Ok(acc.value())
}

/// Log-probability that a sample of size `n` contains `k` distinct types.
pub fn kn_log_pmf(n: usize, k: usize, theta: f64, table: &StirlingTable) -> Result<f64> {
    check_theta(theta)?;
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
    if table.n() < n {
        return Err(Error::CapExceeded {
            what: "type-count pmf size",
            requested: n,
            cap: table.n(),
        });
    }
    Ok(k as f64 * theta.ln() + table.log_s(n, k) - log_pochhammer(theta, n)?)
}

/// `R_i`: the expected number of types of size `i` in a population of size
/// `N`, by Watterson's formula. Evaluated in log space so large `i` stays
/// stable.
pub fn expected_size_index(theta: f64, i: usize, pop_size: usize) -> Result<f64> {
    check_theta(theta)?;
    if i == 0 {
        return Err(Error::ZeroArgument { what: "i" });
    }
    if i > pop_size {
        return Err(Error::OutOfRange {
            what: "i",
            lo: 1,
            hi: pop_size,
            got: i,
        });
    }
    Ok(log_expected_size_index(theta, i, pop_size).exp())
}

fn log_expected_size_index(theta: f64, i: usize, pop_size: usize) -> f64 {
    let mut acc = KahanSum::new();
    acc.add(theta.ln() - (i as f64).ln());
    for j in 1..=i {
        // At theta = 1 numerator and denominator are the same float, so the
        // telescoping product cancels exactly and R_i = 1/i to rounding.
        acc.add(((pop_size - j + 1) as f64).ln() - (theta + (pop_size - j) as f64).ln());
    }
    acc.value()
}

/// `eta(theta, M) = sum_{j=1}^M theta / (theta + j - 1)`, the expected number
/// of distinct types among `M` individuals.
pub fn expected_num_types(theta: f64, m: usize) -> Result<f64> {
    check_theta(theta)?;
    if m == 0 {
        return Err(Error::ZeroArgument { what: "M" });
    }
    let mut acc = KahanSum::new();
    for j in 1..=m {
        acc.add(theta / (theta + (j - 1) as f64));
    }
    Ok(acc.value())
}

/// First derivative of `R_i` with respect to `theta` (diagnostic).
pub fn d_theta_expected_size_index(theta: f64, i: usize, pop_size: usize) -> Result<f64> {
    let r = expected_size_index(theta, i, pop_size)?;
    Ok(r * dlog_r(theta, i, pop_size))
}

/// Second derivative of `R_i` with respect to `theta` (diagnostic).
pub fn d2_theta_expected_size_index(theta: f64, i: usize, pop_size: usize) -> Result<f64> {
    let r = expected_size_index(theta, i, pop_size)?;
    let dlog = dlog_r(theta, i, pop_size);
    // d^2/dtheta^2 ln R_i = -1/theta^2 + sum_j 1/(theta + N - j)^2.
    let mut acc = KahanSum::new();
    acc.add(-1.0 / (theta * theta));
    for j in 1..=i {
        let d = theta + (pop_size - j) as f64;
        acc.add(1.0 / (d * d));
    }
    Ok(r * (dlog * dlog + acc.value()))
}

fn dlog_r(theta: f64, i: usize, pop_size: usize) -> f64 {
    // d/dtheta ln R_i = 1/theta - sum_{j=1}^i 1/(theta + N - j).
    let mut acc = KahanSum::new();
    acc.add(1.0 / theta);
    for j in 1..=i {
        acc.add(-1.0 / (theta + (pop_size - j) as f64));
    }
    acc.value()
}
