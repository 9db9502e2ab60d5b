//! Size limits and the memory estimator that guards projector construction.

use crate::error::{Error, Result};
use crate::partitions::MAX_N;

pub const DEFAULT_N_MAX: usize = 8;
pub const DEFAULT_K_MAX: usize = 4;
pub const DEFAULT_BUDGET_BYTES: u128 = 4 << 30;

/// Environment variable overriding the default memory budget, in MiB.
pub const BUDGET_ENV: &str = "SCHUR_BUDGET_MIB";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub n_max: usize,
    pub k_max: usize,
    pub budget_bytes: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            n_max: DEFAULT_N_MAX,
            k_max: DEFAULT_K_MAX,
            budget_bytes: DEFAULT_BUDGET_BYTES,
        }
    }
}

impl Limits {
    /// Defaults, with the budget taken from [`BUDGET_ENV`] when it is set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            let mib: u128 = raw
                .trim()
                .parse()
                .map_err(|_| Error::argument(format!("{BUDGET_ENV}={raw:?} is not a whole number of MiB")))?;
            limits.budget_bytes = mib << 20;
        }
        Ok(limits)
    }

    pub fn with_n_max(mut self, n_max: usize) -> Result<Self> {
        if n_max == 0 || n_max > MAX_N {
            return Err(Error::Range {
                what: "n_max",
                value: n_max,
                min: 1,
                max: MAX_N,
            });
        }
        self.n_max = n_max;
        Ok(self)
    }

    pub fn with_budget_mib(mut self, mib: u64) -> Self {
        self.budget_bytes = u128::from(mib) << 20;
        self
    }

    pub fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.n_max {
            return Err(Error::Range {
                what: "n",
                value: n,
                min: 1,
                max: self.n_max,
            });
        }
        Ok(())
    }

    pub fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.k_max {
            return Err(Error::Range {
                what: "k",
                value: k,
                min: 1,
                max: self.k_max,
            });
        }
        Ok(())
    }

    /// Admits a projector job for `(n, k)`.
    ///
    /// The budget is checked before the configured `n_max`/`k_max`, so an
    /// oversized request reports how much memory it would need.
    pub fn admit_projectors(&self, n: usize, k: usize) -> Result<MemoryEstimate> {
        if n == 0 || k == 0 {
            return Err(Error::argument(format!("n and k must be positive (n = {n}, k = {k})")));
        }
        let estimate = MemoryEstimate::projectors(n, k);
        if estimate.bytes > self.budget_bytes {
            return Err(Error::Resource {
                job: format!(
                    "isotypic projectors n={n}, k={k} ({} tensor entries, {} stored matrix entries each, {} matrices live)",
                    estimate.tensor_len, estimate.block_entries, estimate.live_matrices
                ),
                required: estimate.bytes,
                available: self.budget_bytes,
            });
        }
        self.check_n(n)?;
        self.check_k(k)?;
        Ok(estimate)
    }

    /// Admits a job that materializes `count` dense vectors of length `k^n`.
    pub fn admit_vectors(&self, n: usize, k: usize, count: u128, job: &str) -> Result<()> {
        let len = saturating_pow(k as u128, n);
        let bytes = len.saturating_mul(8).saturating_mul(count);
        if bytes > self.budget_bytes {
            return Err(Error::Resource {
                job: format!("{job} n={n}, k={k}"),
                required: bytes,
                available: self.budget_bytes,
            });
        }
        Ok(())
    }
}

/// Peak memory for building one complete projector set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryEstimate {
    /// `k^n`.
    pub tensor_len: u128,
    /// Stored entries of one block-diagonal matrix: sum of squared orbit sizes.
    pub block_entries: u128,
    /// Matrices alive at the peak: every non-vanishing projector, one class
    /// sum being folded in, and one product temporary during verification.
    pub live_matrices: u128,
    pub bytes: u128,
}

impl MemoryEstimate {
    pub fn projectors(n: usize, k: usize) -> Self {
        let tensor_len = saturating_pow(k as u128, n);
        let block_entries = squared_orbit_sizes(n, k);
        let live_matrices = partitions_with_at_most(n, k) + 2;
        // i64 entries; per-index orbit position (16 bytes) and cached tuple (n bytes)
        let matrices = block_entries.saturating_mul(8).saturating_mul(live_matrices);
        let basis = tensor_len.saturating_mul(16 + n as u128);
        MemoryEstimate {
            tensor_len,
            block_entries,
            live_matrices,
            bytes: matrices.saturating_add(basis),
        }
    }
}

fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Sum over all compositions `(c_1..c_k)` of `n` of the squared multinomial
/// coefficient, i.e. the number of entries in the block-diagonal layout.
pub(crate) fn squared_orbit_sizes(n: usize, k: usize) -> u128 {
    let binom = binomial_rows(n);
    // totals[m] = sum over compositions of m into t parts, for growing t
    let mut totals: Vec<u128> = (0..=n).map(|m| u128::from(m == 0)).collect();
    for _ in 0..k {
        let mut next = vec![0u128; n + 1];
        for m in 0..=n {
            for j in 0..=m {
                let c = binom[m][j].saturating_mul(binom[m][j]);
                next[m] = next[m].saturating_add(c.saturating_mul(totals[m - j]));
            }
        }
        totals = next;
    }
    totals[n]
}

fn binomial_rows(n: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut row = vec![1u128; m + 1];
        for j in 1..m {
            row[j] = rows[m - 1][j - 1].saturating_add(rows[m - 1][j]);
        }
        rows.push(row);
    }
    rows
}

/// Number of partitions of `n` with at most `k` parts.
pub(crate) fn partitions_with_at_most(n: usize, k: usize) -> u128 {
    // Equivalently, partitions of n with parts bounded by k.
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for part in 1..=k.min(n) {
        for total in part..=n {
            ways[total] = ways[total].saturating_add(ways[total - part]);
        }
    }
    ways[n]
}
