//! Random partition generation: sequential sampler and subsampling.
//!
//! The sequential scheme adds individuals one at a time: individual `j` opens
//! a new type with probability `theta / (theta + j - 1)` and otherwise joins
//! the type of a uniformly chosen earlier individual, which is the same as
//! joining an existing type with probability proportional to its current
//! size. The stationary law of the resulting frequency-of-frequencies vector
//! is exactly the Ewens distribution, at O(n) cost per draw.
//!
//! Subsampling draws `n` of the population's individuals uniformly without
//! replacement (a sequential multivariate hypergeometric over the types); by
//! the partition structure of the Ewens family the subsample is again
//! Ewens-distributed at the smaller size.

use rand::Rng;
use rand_distr::{Distribution, Hypergeometric};

use crate::esf::check_theta;
use crate::partition::Partition;
use crate::{Error, Result};

/// Draws one partition of `n` from the Ewens distribution with parameter
/// `theta`. Deterministic given the stream state.
pub fn sample_partition<R: Rng + ?Sized>(n: usize, theta: f64, rng: &mut R) -> Result<Partition> {
    check_theta(theta)?;
    if n == 0 {
        return Err(Error::ZeroArgument { what: "n" });
    }
    let mut type_of: Vec<usize> = Vec::with_capacity(n);
    let mut num_types = 0;
    for j in 1..=n {
        let seen = (j - 1) as f64;
        let opens_new = j == 1 || rng.random::<f64>() * (theta + seen) < theta;
        if opens_new {
            type_of.push(num_types);
            num_types += 1;
        } else {
            let host = rng.random_range(0..j - 1);
            type_of.push(type_of[host]);
        }
    }
    let mut sizes = vec![0usize; num_types];
    for &t in &type_of {
        sizes[t] += 1;
    }
    Partition::from_part_sizes(&sizes)
}

/// Uniform subsample of `n` individuals from the population partition `p`,
/// returning the induced partition with empty types dropped.
pub fn subsample_partition<R: Rng + ?Sized>(
    p: &Partition,
    n: usize,
    rng: &mut R,
) -> Result<Partition> {
    if n == 0 {
        return Err(Error::ZeroArgument { what: "n" });
    }
    if n > p.n() {
        return Err(Error::OutOfRange {
            what: "subsample size",
            lo: 1,
            hi: p.n(),
            got: n,
        });
    }
    let mut kept: Vec<usize> = Vec::new();
    let mut pool = p.n();
    let mut want = n;
    for size in p.part_sizes() {
        if want == 0 {
            break;
        }
        let drawn = if pool == size {
            want
        } else {
            let h = Hypergeometric::new(pool as u64, size as u64, want as u64)
                .expect("hypergeometric parameters are valid by construction");
            h.sample(rng) as usize
        };
        if drawn > 0 {
            kept.push(drawn);
        }
        pool -= size;
        want -= drawn;
    }
    debug_assert_eq!(want, 0, "subsample must exhaust the requested draw");
    Partition::from_part_sizes(&kept)
}
