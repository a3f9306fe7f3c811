//! FARI(∞) bootstrap: fit a FARIMA(p, d, 0), regenerate the AR recursion
//! with fresh Gaussian innovations, re-integrate fractionally and compare
//! `D̂²` with the replicate distribution.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{
    check_alpha, check_length, d2_hat, truncation_warning, Diagnostics, StatSummary, TestMethod,
    TestResult,
};
use crate::fractional::{frac_diff_values, frac_integrate_values};
use crate::rng::GaussianSource;
use crate::series::{BlockScheme, TimeSeries};
use crate::spectral::local_periodogram_matrix;
use crate::whittle::{select_order_aic, WhittleFit};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BootstrapConfig {
    /// Number of bootstrap replicates.
    #[serde(default = "default_b")]
    pub b: usize,
    pub alpha: f64,
    /// Largest AR order considered by AIC.
    #[serde(default = "default_p_max")]
    pub p_max: usize,
    /// Window length.
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_b() -> usize {
    200
}

fn default_p_max() -> usize {
    10
}

/// `⌊(1 − α)·B⌋`, guarded against representation error in `1 − α`.
pub fn order_statistic_index(alpha: f64, b: usize) -> usize {
    ((1.0 - alpha) * b as f64 + 1e-9).floor() as usize
}

impl BootstrapConfig {
    pub fn new(b: usize, alpha: f64, p_max: usize, n: usize, seed: u64) -> Self {
        BootstrapConfig { b, alpha, p_max, n, seed }
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        let idx = order_statistic_index(self.alpha, self.b);
        if idx < 1 || idx > self.b {
            return Err(Error::invalid(format!(
                "floor((1 - alpha) * B) = {idx} must lie in [1, B = {}]",
                self.b
            )));
        }
        Ok(())
    }
}

/// Draws one bootstrap series from the already differenced data `y`.
fn replicate_from_differenced(y: &[f64], fit: &WhittleFit, rng: &mut GaussianSource) -> Vec<f64> {
    let t = y.len();
    let p = fit.ar_hat.len().min(t);
    let sigma = fit.sigma_sq_hat.sqrt();
    let mut y_star = vec![0.0; t];
    y_star[..p].copy_from_slice(&y[..p]);
    for s in p..t {
        let mut v = sigma * rng.next_normal();
        for (j, a) in fit.ar_hat.iter().enumerate() {
            v += a * y_star[s - j - 1];
        }
        y_star[s] = v;
    }
    frac_integrate_values(&y_star, fit.d_hat)
}

/// One FARI(∞) pseudo-series of the same length as `series`.
pub fn fari_bootstrap_replicate(
    series: &TimeSeries,
    fit: &WhittleFit,
    rng: &mut GaussianSource,
) -> Result<TimeSeries> {
    let y = frac_diff_values(series.values(), fit.d_hat);
    TimeSeries::new(replicate_from_differenced(&y, fit, rng))
}

/// Sorted bootstrap replicates of `D̂²` for a fitted model.
///
/// Replicate `b` draws from `GaussianSource::new(seed).child(b)`, so the
/// result does not depend on how the work is scheduled.
pub fn bootstrap_distribution(
    series: &TimeSeries,
    fit: &WhittleFit,
    scheme: &BlockScheme,
    b: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if series.len() != scheme.t() {
        return Err(Error::invalid(format!(
            "bootstrap expects the truncated series of length {}, got {}",
            scheme.t(),
            series.len()
        )));
    }
    let root = GaussianSource::new(seed);
    let y = frac_diff_values(series.values(), fit.d_hat);
    let mut reps: Vec<f64> = (0..b as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = root.child(i);
            let x = TimeSeries::new(replicate_from_differenced(&y, fit, &mut rng))?;
            Ok(d2_hat(&local_periodogram_matrix(&x, scheme)?))
        })
        .collect::<Result<_>>()?;
    reps.sort_by(f64::total_cmp);
    Ok(reps)
}

/// Everything computed by one bootstrap run, before choosing a level.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapOutcome {
    pub summary: StatSummary,
    pub p_hat: usize,
    pub fit: WhittleFit,
    /// Ascending replicates of `D̂²*`.
    pub replicates: Vec<f64>,
    pub diagnostics: Diagnostics,
}

impl BootstrapOutcome {
    /// Critical value and decision at level `alpha`.
    pub fn decide(&self, alpha: f64) -> Result<(f64, bool)> {
        check_alpha(alpha)?;
        let b = self.replicates.len();
        let idx = order_statistic_index(alpha, b);
        if idx < 1 || idx > b {
            return Err(Error::invalid(format!(
                "floor((1 - alpha) * B) = {idx} must lie in [1, B = {b}]"
            )));
        }
        let threshold = self.replicates[idx - 1];
        Ok((threshold, self.summary.d2_hat > threshold))
    }
}

/// Fits the bootstrap model on the truncated series and draws `b` replicates.
pub fn bootstrap_outcome(
    series: &TimeSeries,
    n: usize,
    b: usize,
    p_max: usize,
    seed: u64,
) -> Result<BootstrapOutcome> {
    check_length(series, n)?;
    if b == 0 {
        return Err(Error::invalid("the number of bootstrap replicates must be positive"));
    }
    let full_scheme = BlockScheme::new(series.len(), n)?;
    let truncated = series.truncated(full_scheme.t())?;
    let scheme = BlockScheme::new(full_scheme.t(), n)?;
    let pg = local_periodogram_matrix(&truncated, &scheme)?;
    let summary = StatSummary::from_periodogram(&pg);

    let mut diagnostics = Diagnostics {
        truncated_observations: full_scheme.discarded(),
        ..Diagnostics::default()
    };
    diagnostics.warnings.extend(truncation_warning(&full_scheme));

    let feasible_p = (scheme.t() / 8).saturating_sub(2);
    let p_max_eff = p_max.min(feasible_p);
    if p_max_eff < p_max {
        diagnostics.warnings.push(format!(
            "AR order search capped at {p_max_eff} (requested {p_max}) for T = {}",
            scheme.t()
        ));
    }
    let (p_hat, mut fits) = select_order_aic(&truncated, p_max_eff)?;
    let fit = fits.swap_remove(p_hat);
    if fit.sigma_sq_hat <= 0.0 {
        return Err(Error::Degenerate(
            "fitted innovation variance is zero; bootstrap replicates would be degenerate".into(),
        ));
    }
    if fit.d_hat > 0.25 {
        diagnostics.warnings.push(format!(
            "estimated memory parameter d = {:.3} exceeds 1/4; the distance is not defined for such processes",
            fit.d_hat
        ));
    }
    let replicates = bootstrap_distribution(&truncated, &fit, &scheme, b, seed)?;
    diagnostics.d_hat = Some(fit.d_hat);
    diagnostics.p_hat = Some(p_hat);
    diagnostics.ar_hat = Some(fit.ar_hat.clone());
    diagnostics.sigma_sq_hat = Some(fit.sigma_sq_hat);
    diagnostics.whittle_converged = Some(fit.converged);
    Ok(BootstrapOutcome {
        summary,
        p_hat,
        fit,
        replicates,
        diagnostics,
    })
}

/// Bootstrap test rejecting stationarity when `D̂²` exceeds the
/// `⌊(1 − α)B⌋`-th smallest bootstrap replicate.
pub fn bootstrap_test(series: &TimeSeries, config: &BootstrapConfig) -> Result<TestResult> {
    config.validate()?;
    let outcome = bootstrap_outcome(series, config.n, config.b, config.p_max, config.seed)?;
    let (threshold, reject) = outcome.decide(config.alpha)?;
    let mut diagnostics = outcome.diagnostics;
    diagnostics.order_statistic_index = Some(order_statistic_index(config.alpha, config.b));
    diagnostics.bootstrap_replicates = Some(outcome.replicates);
    Ok(TestResult {
        summary: outcome.summary,
        alpha: config.alpha,
        threshold,
        reject,
        method: TestMethod::Bootstrap,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractional::frac_integrate;

    fn fit(d: f64, sigma_sq: f64, ar: Vec<f64>) -> WhittleFit {
        WhittleFit {
            d_hat: d,
            sigma_sq_hat: sigma_sq,
            p: ar.len(),
            ar_hat: ar,
            objective: 0.0,
            aic: 0.0,
            aic_unscaled_penalty: 0.0,
            converged: true,
            iterations: 0,
        }
    }

    #[test]
    fn order_statistic_positions() {
        assert_eq!(order_statistic_index(0.05, 200), 190);
        assert_eq!(order_statistic_index(0.10, 200), 180);
        assert_eq!(order_statistic_index(0.01, 100), 99);
        assert!(BootstrapConfig::new(10, 0.95, 10, 32, 0).validate().is_err());
        assert!(BootstrapConfig::new(200, 0.05, 10, 32, 0).validate().is_ok());
    }

    #[test]
    fn white_noise_world_replays_innovations() {
        let s = TimeSeries::new(vec![0.5; 64]).unwrap();
        let x = fari_bootstrap_replicate(&s, &fit(0.0, 1.0, vec![]), &mut GaussianSource::new(3))
            .unwrap();
        assert_eq!(x.values(), GaussianSource::new(3).normals(64).as_slice());
    }

    #[test]
    fn zero_innovations_keep_start_values() {
        let x: Vec<f64> = (1..=40).map(|v| (v as f64).sin()).collect();
        let s = TimeSeries::new(x).unwrap();
        let d = 0.2;
        let f = fit(d, 0.0, vec![0.0, 0.0, 0.0]);
        let out = fari_bootstrap_replicate(&s, &f, &mut GaussianSource::new(1)).unwrap();
        let y = frac_diff_values(s.values(), d);
        let mut y_star = vec![0.0; 40];
        y_star[..3].copy_from_slice(&y[..3]);
        let want = frac_integrate(&TimeSeries::new(y_star).unwrap(), d).unwrap();
        assert_eq!(out, want);
    }

    #[test]
    fn start_values_are_copied() {
        let x: Vec<f64> = (1..=50).map(|v| (0.3 * v as f64).cos()).collect();
        let s = TimeSeries::new(x).unwrap();
        let d = 0.15;
        let f = fit(d, 1.0, vec![0.4, -0.2]);
        let out = fari_bootstrap_replicate(&s, &f, &mut GaussianSource::new(9)).unwrap();
        let back = frac_diff_values(out.values(), d);
        let y = frac_diff_values(s.values(), d);
        for t in 0..2 {
            assert!((back[t] - y[t]).abs() < 1e-12);
        }
    }

    #[test]
    fn distribution_is_schedule_independent() {
        let s = TimeSeries::new(GaussianSource::new(2).normals(256)).unwrap();
        let scheme = BlockScheme::new(256, 16).unwrap();
        let f = fit(0.1, 1.0, vec![0.3]);
        let par = bootstrap_distribution(&s, &f, &scheme, 40, 5).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let seq = pool.install(|| bootstrap_distribution(&s, &f, &scheme, 40, 5).unwrap());
        assert_eq!(par, seq);
        // manual sequential evaluation
        let y = frac_diff_values(s.values(), 0.1);
        let root = GaussianSource::new(5);
        let mut manual: Vec<f64> = (0..40)
            .map(|i| {
                let x = replicate_from_differenced(&y, &f, &mut root.child(i));
                d2_hat(&local_periodogram_matrix(&TimeSeries::new(x).unwrap(), &scheme).unwrap())
            })
            .collect();
        manual.sort_by(f64::total_cmp);
        assert_eq!(par, manual);
    }

    #[test]
    fn test_decision_uses_order_statistic() {
        let s = TimeSeries::new(GaussianSource::new(6).normals(260)).unwrap();
        let cfg = BootstrapConfig::new(200, 0.05, 2, 32, 11);
        let r = bootstrap_test(&s, &cfg).unwrap();
        let reps = r.diagnostics.bootstrap_replicates.as_ref().unwrap();
        assert_eq!(reps.len(), 200);
        assert_eq!(r.threshold, reps[189]);
        assert_eq!(r.reject, r.summary.d2_hat > r.threshold);
        assert_eq!(r.diagnostics.truncated_observations, 4);
        assert_eq!(r.summary.scheme.t(), 256);
        let again = bootstrap_test(&s, &cfg).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn constant_series_is_degenerate() {
        let s = TimeSeries::new(vec![2.0; 256]).unwrap();
        let cfg = BootstrapConfig::new(50, 0.1, 2, 32, 0);
        assert!(matches!(bootstrap_test(&s, &cfg), Err(Error::Degenerate(_))));
    }
}
