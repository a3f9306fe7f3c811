//! Riemann-sum estimators of the stationarity distance and the asymptotic test.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::normal::normal_quantile;
use crate::series::{BlockScheme, TimeSeries};
use crate::spectral::{local_periodogram_matrix, PeriodogramMatrix};
use crate::whittle::fit_whittle;

// The Riemann sums run over the interior Fourier frequencies
// λ_k = 2πk/N, k = 1..N/2−1. At λ = π the periodogram is (1/2π)·χ²₁ rather
// than exponential, and including it shifts the standardized statistic by
// O(√T/N). Each sum is normalized by the number of ordinates it uses, so
// a constant periodogram c gives F̂₁ = F̂₂ = c²/2 as with the full sum.

/// Number of interior frequencies per block, `N/2 − 1`.
fn interior(pg: &PeriodogramMatrix) -> usize {
    pg.k() - 1
}

fn interior_rows(pg: &PeriodogramMatrix) -> impl Iterator<Item = &[f64]> {
    let k = interior(pg);
    pg.rows().map(move |r| &r[..k])
}

/// `F̂₁ = (1/(2M(N/2−1))) Σ_j Σ_k I_N(u_j, λ_k)²`.
pub fn f1_hat(pg: &PeriodogramMatrix) -> f64 {
    let sum: f64 = interior_rows(pg).flatten().map(|v| v * v).sum();
    sum / (2 * pg.m() * interior(pg)) as f64
}

/// `F̂₂ = (1/(2(N/2−1))) Σ_k ((1/M) Σ_j I_N(u_j, λ_k))²`.
pub fn f2_hat(pg: &PeriodogramMatrix) -> f64 {
    let m = pg.m() as f64;
    let mut col = vec![0.0; interior(pg)];
    for row in interior_rows(pg) {
        for (c, v) in col.iter_mut().zip(row) {
            *c += v;
        }
    }
    col.iter().map(|c| (c / m) * (c / m)).sum::<f64>() / (2 * interior(pg)) as f64
}

/// `D̂² = 2π F̂₁ − 4π F̂₂`.
pub fn d2_hat(pg: &PeriodogramMatrix) -> f64 {
    2.0 * PI * f1_hat(pg) - 4.0 * PI * f2_hat(pg)
}

/// Bias correction `B̂ = (2πN/T) F̂₁`.
pub fn bias_hat(pg: &PeriodogramMatrix) -> f64 {
    bias_from_f1(pg.scheme(), f1_hat(pg))
}

fn bias_from_f1(scheme: &BlockScheme, f1: f64) -> f64 {
    2.0 * PI * scheme.n() as f64 / scheme.t() as f64 * f1
}

/// `τ̂₁² = (1/(12M(N/2−1))) Σ_j Σ_k I_N(u_j, λ_k)⁴`.
pub fn tau1_sq_hat(pg: &PeriodogramMatrix) -> f64 {
    let sum: f64 = interior_rows(pg).flatten().map(|v| (v * v) * (v * v)).sum();
    sum / (12 * pg.m() * interior(pg)) as f64
}

/// All intermediate estimates behind one test decision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatSummary {
    pub f1_hat: f64,
    pub f2_hat: f64,
    pub d2_hat: f64,
    pub bias_hat: f64,
    pub tau1_sq_hat: f64,
    /// `√T (D̂² + B̂) / √(4π² τ̂₁²)`; NaN when `τ̂₁² = 0`.
    pub statistic: f64,
    pub scheme: BlockScheme,
}

impl StatSummary {
    pub fn from_periodogram(pg: &PeriodogramMatrix) -> Self {
        let f1 = f1_hat(pg);
        let f2 = f2_hat(pg);
        let d2 = 2.0 * PI * f1 - 4.0 * PI * f2;
        let bias = bias_from_f1(pg.scheme(), f1);
        let tau = tau1_sq_hat(pg);
        let statistic = if tau > 0.0 {
            (pg.scheme().t() as f64).sqrt() * (d2 + bias) / (4.0 * PI * PI * tau).sqrt()
        } else {
            f64::NAN
        };
        StatSummary {
            f1_hat: f1,
            f2_hat: f2,
            d2_hat: d2,
            bias_hat: bias,
            tau1_sq_hat: tau,
            statistic,
            scheme: pg.scheme().clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestMethod {
    Asymptotic,
    Bootstrap,
}

/// Side information attached to a decision.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Trailing observations dropped so that `T = M·N`.
    pub truncated_observations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_hat: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_hat: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ar_hat: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_sq_hat: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub whittle_converged: Option<bool>,
    /// 1-indexed position of the bootstrap critical value in the sorted replicates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_statistic_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bootstrap_replicates: Option<Vec<f64>>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestResult {
    pub summary: StatSummary,
    pub alpha: f64,
    pub threshold: f64,
    pub reject: bool,
    pub method: TestMethod,
    pub diagnostics: Diagnostics,
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    Ok(())
}

pub(crate) fn check_length(series: &TimeSeries, n: usize) -> Result<()> {
    if series.len() < 2 * n {
        return Err(Error::invalid(format!(
            "series length {} is shorter than 2N = {}",
            series.len(),
            2 * n
        )));
    }
    Ok(())
}

pub(crate) fn truncation_warning(scheme: &BlockScheme) -> Option<String> {
    (scheme.discarded() > 0).then(|| {
        format!(
            "{} trailing observations discarded so that T = M*N = {}",
            scheme.discarded(),
            scheme.t()
        )
    })
}

/// Summary statistics for `series` with window length `n` (after truncation).
pub fn summarize(series: &TimeSeries, n: usize) -> Result<StatSummary> {
    let scheme = BlockScheme::new(series.len(), n)?;
    let pg = local_periodogram_matrix(series, &scheme)?;
    Ok(StatSummary::from_periodogram(&pg))
}

/// One-sided level-`alpha` test rejecting stationarity when the standardized
/// statistic reaches the `(1 − alpha)` normal quantile.
pub fn asymptotic_test(series: &TimeSeries, n: usize, alpha: f64) -> Result<TestResult> {
    check_alpha(alpha)?;
    check_length(series, n)?;
    let scheme = BlockScheme::new(series.len(), n)?;
    let pg = local_periodogram_matrix(series, &scheme)?;
    let summary = StatSummary::from_periodogram(&pg);
    if summary.tau1_sq_hat <= 0.0 {
        return Err(Error::Degenerate(
            "variance estimate tau1^2 is zero (e.g. a constant series); the standardized statistic is undefined".into(),
        ));
    }
    let threshold = normal_quantile(1.0 - alpha)?;
    let mut diagnostics = Diagnostics {
        truncated_observations: scheme.discarded(),
        ..Diagnostics::default()
    };
    diagnostics.warnings.extend(truncation_warning(&scheme));
    // Long-memory check: normality of the statistic needs d < 1/8.
    let truncated = series.truncated(scheme.t())?;
    match fit_whittle(&truncated, 0) {
        Ok(fit) => {
            if fit.d_hat >= 0.125 {
                diagnostics.warnings.push(format!(
                    "estimated memory parameter d = {:.3} is at least 1/8; the normal approximation is unreliable, prefer the bootstrap test",
                    fit.d_hat
                ));
            }
            diagnostics.d_hat = Some(fit.d_hat);
            diagnostics.whittle_converged = Some(fit.converged);
        }
        Err(e) => diagnostics
            .warnings
            .push(format!("memory parameter could not be estimated: {e}")),
    }
    Ok(TestResult {
        reject: summary.statistic >= threshold,
        summary,
        alpha,
        threshold,
        method: TestMethod::Asymptotic,
        diagnostics,
    })
}
