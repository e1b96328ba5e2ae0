//! Low-level numeric helpers: log-space addition and compensated summation.

/// Returns `ln(exp(a) + exp(b))` without overflowing intermediate values.
///
/// Either argument may be `f64::NEG_INFINITY`, representing a zero term.
pub fn ln_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Natural log of `m!`, accumulated as a compensated sum of `ln j`.
pub fn ln_factorial(m: usize) -> f64 {
    let mut acc = KahanSum::new();
    for j in 2..=m {
        acc.add((j as f64).ln());
    }
    acc.value()
}

/// Neumaier-compensated accumulator for long floating-point sums.
///
/// Tracks a running compensation term so that sums over many thousands of
/// terms keep close to full double precision regardless of ordering.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let total = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - total) + x;
        } else {
            self.compensation += (x - total) + self.sum;
        }
        self.sum = total;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ln_add_exp_matches_direct_evaluation() {
        assert_relative_eq!(
            ln_add_exp(2.0_f64.ln(), 3.0_f64.ln()),
            5.0_f64.ln(),
            max_relative = 1e-15
        );
        assert_relative_eq!(ln_add_exp(-1.3, 0.4), ((-1.3_f64).exp() + 0.4_f64.exp()).ln());
    }

    #[test]
    fn ln_add_exp_is_symmetric() {
        assert_eq!(ln_add_exp(1.0, -40.0), ln_add_exp(-40.0, 1.0));
    }

    #[test]
    fn ln_add_exp_handles_zero_terms() {
        assert_eq!(ln_add_exp(f64::NEG_INFINITY, 0.7), 0.7);
        assert_eq!(ln_add_exp(0.7, f64::NEG_INFINITY), 0.7);
        assert_eq!(
            ln_add_exp(f64::NEG_INFINITY, f64::NEG_INFINITY),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn ln_add_exp_survives_large_magnitudes() {
        // exp(700) alone overflows f64 only past ~709; the sum must not.
        assert_relative_eq!(ln_add_exp(700.0, 700.0), 700.0 + 2.0_f64.ln());
        assert_relative_eq!(ln_add_exp(700.0, -700.0), 700.0);
    }

    #[test]
    fn ln_factorial_small_values() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert_relative_eq!(ln_factorial(5), 120.0_f64.ln(), max_relative = 1e-15);
        assert_relative_eq!(ln_factorial(10), 3_628_800.0_f64.ln(), max_relative = 1e-15);
    }

    #[test]
    fn kahan_sum_beats_naive_on_adversarial_input() {
        let mut acc = KahanSum::new();
        let mut naive = 0.0_f64;
        acc.add(1.0);
        naive += 1.0;
        for _ in 0..10_000 {
            acc.add(1e-16);
            naive += 1e-16;
        }
        let exact = 1.0 + 1e-12;
        assert_relative_eq!(acc.value(), exact, max_relative = 1e-15);
        // The naive sum loses every one of the small addends.
        assert_eq!(naive, 1.0);
    }
}
