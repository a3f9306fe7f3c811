//! Time series container and the block partition used by every Riemann sum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite, real-valued sample `X_1..X_T` with `T >= 2` and no non-finite values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::invalid(format!(
                "series length must be at least 2, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "series value at index {} is not finite ({})",
                i + 1,
                values[i]
            )));
        }
        Ok(TimeSeries { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First `len` observations. `len` must be at least 2.
    pub fn truncated(&self, len: usize) -> Result<TimeSeries> {
        if len > self.len() {
            return Err(Error::invalid(format!(
                "cannot truncate series of length {} to {}",
                self.len(),
                len
            )));
        }
        TimeSeries::new(self.values[..len].to_vec())
    }

    /// Subtracts the global sample mean.
    pub fn demeaned(&self) -> TimeSeries {
        let mean = self.values.iter().sum::<f64>() / self.len() as f64;
        TimeSeries {
            values: self.values.iter().map(|v| v - mean).collect(),
        }
    }

    pub fn scaled(&self, c: f64) -> Result<TimeSeries> {
        TimeSeries::new(self.values.iter().map(|v| c * v).collect())
    }
}

/// Partition of the first `M·N` observations into `M` consecutive blocks of
/// even length `N`, with rescaled midpoints `u_j = (N(j-1) + N/2) / T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockScheme {
    /// Effective sample size `M·N`.
    t: usize,
    n: usize,
    m: usize,
    discarded: usize,
}

impl BlockScheme {
    /// Builds the scheme for a sample of length `t` and window length `n`.
    ///
    /// Trailing observations beyond `⌊t/n⌋·n` are dropped and reported by
    /// [`BlockScheme::discarded`].
    pub fn new(t: usize, n: usize) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::invalid(format!("window length N must be even, got {n}")));
        }
        if n < 4 {
            return Err(Error::invalid(format!("window length N must be at least 4, got {n}")));
        }
        if n > t {
            return Err(Error::invalid(format!(
                "window length N={n} exceeds the sample size T={t}"
            )));
        }
        let m = t / n;
        Ok(BlockScheme {
            t: m * n,
            n,
            m,
            discarded: t - m * n,
        })
    }

    /// Effective (truncated) sample size `T = M·N`.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of trailing observations not covered by any block.
    pub fn discarded(&self) -> usize {
        self.discarded
    }

    /// Number of positive Fourier frequencies per block, `⌊N/2⌋`.
    pub fn k(&self) -> usize {
        self.n / 2
    }

    /// Block midpoint `t_j` (1-indexed `j`), in observation units.
    pub fn midpoint_index(&self, j: usize) -> usize {
        self.n * (j - 1) + self.n / 2
    }

    /// Rescaled midpoints `u_1 < ... < u_M`.
    pub fn midpoints(&self) -> Vec<f64> {
        (1..=self.m)
            .map(|j| self.midpoint_index(j) as f64 / self.t as f64)
            .collect()
    }

    /// 1-indexed first observation of each block, `t_j - N/2 + 1`.
    pub fn block_start_indices(&self) -> Vec<usize> {
        (1..=self.m)
            .map(|j| self.midpoint_index(j) + 1 - self.n / 2)
            .collect()
    }

    /// Fourier frequencies `λ_{k,N} = 2πk/N` for `k = 1..⌊N/2⌋`.
    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.n as f64;
        (1..=self.k())
            .map(|k| 2.0 * std::f64::consts::PI * k as f64 / n)
            .collect()
    }
}
