//! Log-space tables of unsigned Stirling numbers of the first kind.
//!
//! `s(m, k)` counts permutations of `m` elements with `k` cycles and obeys
//! the recurrence `s(m+1, k) = s(m, k-1) + m * s(m, k)`. The raw values
//! outgrow `f64` near `m = 171`, so the table stores natural logs and the
//! recurrence runs through log-sum-exp. The defining identity
//! `theta^{[m]} = sum_k s(m, k) theta^k` doubles as a validation probe.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::numeric::ln_add_exp;
use crate::{Error, Result};

/// Default cap on the table size.
pub const DEFAULT_TABLE_CAP: usize = 2048;

/// Triangular table of `ln s(m, k)` for `1 <= k <= m <= n`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<f64>>,
}

impl StirlingTable {
    /// Largest `m` covered by the table.
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// `ln s(m, k)`; negative infinity for `k` outside `1..=m`.
    ///
    /// # Panics
    /// If `m` is zero or exceeds the table size.
    pub fn log_s(&self, m: usize, k: usize) -> f64 {
        assert!(
            m >= 1 && m <= self.rows.len(),
            "m={m} outside table of size {}",
            self.rows.len()
        );
        if k < 1 || k > m {
            return f64::NEG_INFINITY;
        }
        self.rows[m - 1][k - 1]
    }

    /// The row `[ln s(m, 1), ..., ln s(m, m)]`.
    ///
    /// # Panics
    /// If `m` is zero or exceeds the table size.
    pub fn row(&self, m: usize) -> &[f64] {
        assert!(
            m >= 1 && m <= self.rows.len(),
            "m={m} outside table of size {}",
            self.rows.len()
        );
        &self.rows[m - 1]
    }
}

/// Builds the table for `1..=n` under the default cap.
pub fn stirling1_log_table(n: usize) -> Result<StirlingTable> {
    stirling1_log_table_with_cap(n, DEFAULT_TABLE_CAP)
}

/// Builds the table for `1..=n` under an explicit cap.
pub fn stirling1_log_table_with_cap(n: usize, cap: usize) -> Result<StirlingTable> {
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
            what: "Stirling table size",
            requested: n,
            cap,
        });
    }
    let mut rows = Vec::with_capacity(n);
    rows.push(vec![0.0]);
    for m in 1..n {
        let prev = &rows[m - 1];
        let ln_m = (m as f64).ln();
        let mut row = Vec::with_capacity(m + 1);
        for k in 1..=m + 1 {
            let carried = if k >= 2 { prev[k - 2] } else { f64::NEG_INFINITY };
            let scaled = if k <= m {
                ln_m + prev[k - 1]
            } else {
                f64::NEG_INFINITY
            };
            row.push(ln_add_exp(carried, scaled));
        }
        rows.push(row);
    }
    Ok(StirlingTable { rows })
}

/// Returns a shared table covering at least `n`, building and caching it on
/// first use. Any cached table that is large enough is reused, so repeated
/// callers across threads share one read-only allocation.
pub fn shared_table(n: usize) -> Result<Arc<StirlingTable>> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            lo: 1,
            hi: DEFAULT_TABLE_CAP,
            got: 0,
        });
    }
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<StirlingTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().expect("stirling cache poisoned");
    if let Some((_, table)) = guard.range(n..).next() {
        return Ok(Arc::clone(table));
    }
    let table = Arc::new(stirling1_log_table(n)?);
    guard.insert(n, Arc::clone(&table));
    Ok(table)
}
