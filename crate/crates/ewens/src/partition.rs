//! Integer partitions in frequency-of-frequencies form.
//!
//! A partition of `n` records, for each part size `i`, the number of parts
//! (types) of exactly that size. The representation is sparse: absent sizes
//! have multiplicity zero, and stored multiplicities are strictly positive.
//! The partitioned integer `n = sum(i * s_i)` and the part count
//! `k = sum(s_i)` are derived at construction and kept consistent.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Default cap for exhaustive enumeration; p(12) = 77 partitions.
pub const ENUMERATION_CAP: usize = 12;

/// A partition of a positive integer in frequency-of-frequencies form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    s: BTreeMap<usize, usize>,
    n: usize,
    k: usize,
}

impl Partition {
    /// Builds a partition from `(part size, multiplicity)` pairs.
    ///
    /// Zero multiplicities are dropped and duplicate sizes accumulate. The
    /// result must describe a partition of some `n >= 1`.
    pub fn from_multiplicities<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut s = BTreeMap::new();
        for (i, m) in pairs {
            if i == 0 {
                return Err(Error::InvalidPartition {
                    reason: "part size 0 is not allowed".into(),
                });
            }
            if m > 0 {
                *s.entry(i).or_insert(0) += m;
            }
        }
        if s.is_empty() {
            return Err(Error::InvalidPartition {
                reason: "a partition must have at least one part".into(),
            });
        }
        let n = s.iter().map(|(i, m)| i * m).sum();
        let k = s.values().sum();
        Ok(Self { s, n, k })
    }

    /// Builds a partition from an explicit list of part sizes.
    pub fn from_part_sizes(sizes: &[usize]) -> Result<Self> {
        Self::from_multiplicities(sizes.iter().map(|&i| (i, 1)))
    }

    /// The partitioned integer `n = sum(i * s_i)`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The number of parts `k = sum(s_i)`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Multiplicity of part size `i`; zero if the size is absent.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.s.get(&i).copied().unwrap_or(0)
    }

    /// Iterates over `(part size, multiplicity)` pairs in increasing size order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.s.iter().map(|(&i, &m)| (i, m))
    }

    /// Expands the partition into an ascending list of part sizes.
    pub fn part_sizes(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.k);
        for (&i, &m) in &self.s {
            out.extend(std::iter::repeat_n(i, m));
        }
        out
    }
}

impl fmt::Display for Partition {
    /// Formats as `size:multiplicity` pairs joined by `;`, e.g. `1:3;2:1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&i, &m) in &self.s {
            if !first {
                f.write_str(";")?;
            }
            write!(f, "{i}:{m}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for field in text.split(';') {
            let (i, m) = field.split_once(':').ok_or_else(|| Error::InvalidPartition {
                reason: format!("expected size:multiplicity, got {field:?}"),
            })?;
            let parse = |part: &str| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition {
                        reason: format!("cannot parse {part:?} as a non-negative integer"),
                    })
            };
            pairs.push((parse(i)?, parse(m)?));
        }
        Self::from_multiplicities(pairs)
    }
}

/// Enumerates every partition of `n` exactly once, under the default cap
/// [`ENUMERATION_CAP`].
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_with_cap(n, ENUMERATION_CAP)
}

/// Enumerates every partition of `n` exactly once, under an explicit cap.
///
/// Partitions are emitted in reverse lexicographic order of their part lists:
/// `[n]` first, all-ones last.
pub fn enumerate_partitions_with_cap(n: usize, cap: usize) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            lo: 1,
            hi: cap,
            got: 0,
        });
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "enumeration size",
            requested: n,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    descend(n, n, &mut parts, &mut out);
    Ok(out)
}

fn descend(remaining: usize, max_part: usize, parts: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_part_sizes(parts).expect("generated parts are valid"));
        return;
    }
    for next in (1..=remaining.min(max_part)).rev() {
        parts.push(next);
        descend(remaining - next, next, parts, out);
        parts.pop();
    }
}
