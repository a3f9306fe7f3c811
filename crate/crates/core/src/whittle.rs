//! Whittle estimation of stationary FARIMA(p, d, 0) models and AIC order
//! selection.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::farima::{ar_is_stable, STABILITY_MARGIN};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::series::TimeSeries;
use crate::spectral::{full_periodogram, Periodogram};

/// Search interval for the memory parameter.
pub const D_MIN: f64 = 1e-4;
pub const D_MAX: f64 = 0.5 - 1e-4;

const MULTISTART_D: [f64; 5] = [0.05, 0.15, 0.25, 0.35, 0.45];
const D_STEP: f64 = 0.05;
const AR_STEP: f64 = 0.1;

/// Parameters `(d, σ², a_1..a_p)` of a stationary FARIMA(p, d, 0).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WhittleParams {
    pub d: f64,
    pub sigma_sq: f64,
    pub ar: Vec<f64>,
}

/// `f(λ) = |1 − e^{−iλ}|^{−2d}/(2π) · σ² / |1 − Σ a_j e^{−iλj}|²`.
pub fn whittle_spectral_density(theta: &WhittleParams, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::invalid(format!("lambda must be positive, got {lambda}")));
    }
    if !ar_is_stable(&theta.ar, STABILITY_MARGIN) {
        return Err(Error::invalid(format!("AR coefficients {:?} are not stable", theta.ar)));
    }
    let (mut re, mut im) = (1.0, 0.0);
    for (j, a) in theta.ar.iter().enumerate() {
        let (s, c) = ((j + 1) as f64 * lambda).sin_cos();
        re -= a * c;
        im += a * s;
    }
    let long = (4.0 * (0.5 * lambda).sin().powi(2)).powf(-theta.d);
    Ok(long / (2.0 * PI) * theta.sigma_sq / (re * re + im * im))
}

/// `(1/T) Σ_{k=1}^{⌊T/2⌋} (log f(λ_k) + I(λ_k)/f(λ_k))`; `+∞` when not finite.
pub fn whittle_objective(theta: &WhittleParams, periodogram: &Periodogram) -> f64 {
    let mut sum = 0.0;
    for (&lambda, &i) in periodogram.frequencies.iter().zip(&periodogram.ordinates) {
        let f = match whittle_spectral_density(theta, lambda) {
            Ok(f) => f,
            Err(_) => return f64::INFINITY,
        };
        sum += f.ln() + i / f;
    }
    let v = sum / periodogram.t as f64;
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

/// A fitted FARIMA(p, d, 0).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WhittleFit {
    pub d_hat: f64,
    pub sigma_sq_hat: f64,
    pub ar_hat: Vec<f64>,
    pub p: usize,
    /// Minimized `(1/T)`-normalized Whittle objective.
    pub objective: f64,
    /// `objective + p/T`, equivalent to `(−2 log L + 2p) / 2T` for the
    /// Whittle likelihood `L`.
    pub aic: f64,
    /// `2π · objective + p/T`, a variant whose penalty is `2π` times
    /// weaker relative to the likelihood term.
    pub aic_unscaled_penalty: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl WhittleFit {
    pub fn params(&self) -> WhittleParams {
        WhittleParams {
            d: self.d_hat,
            sigma_sq: self.sigma_sq_hat,
            ar: self.ar_hat.clone(),
        }
    }
}

/// Frequency tables shared by every evaluation of the profiled objective.
struct WhittleData<'a> {
    pg: &'a Periodogram,
    /// `log |1 − e^{−iλ_k}|²`.
    log_diff: Vec<f64>,
    /// `cos(jλ_k)`, `sin(jλ_k)` for `j = 1..p`, row-major by `k`.
    cos: Vec<f64>,
    sin: Vec<f64>,
    p: usize,
}

impl<'a> WhittleData<'a> {
    fn new(pg: &'a Periodogram, p: usize) -> Self {
        let log_diff = pg
            .frequencies
            .iter()
            .map(|l| (4.0 * (0.5 * l).sin().powi(2)).ln())
            .collect();
        let mut cos = Vec::with_capacity(pg.len() * p);
        let mut sin = Vec::with_capacity(pg.len() * p);
        for l in &pg.frequencies {
            for j in 1..=p {
                let (s, c) = (j as f64 * l).sin_cos();
                cos.push(c);
                sin.push(s);
            }
        }
        WhittleData { pg, log_diff, cos, sin, p }
    }

    /// `|a(e^{−iλ_k})|²`.
    fn ar_power(&self, k: usize, ar: &[f64]) -> f64 {
        let (mut re, mut im) = (1.0, 0.0);
        let base = k * self.p;
        for (j, a) in ar.iter().enumerate() {
            re -= a * self.cos[base + j];
            im += a * self.sin[base + j];
        }
        re * re + im * im
    }

    /// Profiled `σ²` and the objective at `(d, ar)`; `None` if infeasible.
    fn profile(&self, d: f64, ar: &[f64]) -> Option<(f64, f64)> {
        if !(D_MIN..=D_MAX).contains(&d) || !ar_is_stable(ar, STABILITY_MARGIN) {
            return None;
        }
        // with f = σ² g / 2π: σ̂² = (2π/K) Σ I/g and
        // T·objective = K log(σ̂²/2π) + Σ log g + K
        let k = self.pg.len() as f64;
        let mut sum_ratio = 0.0;
        let mut sum_log_g = 0.0;
        for (idx, (&i, &ld)) in self.pg.ordinates.iter().zip(&self.log_diff).enumerate() {
            let a2 = self.ar_power(idx, ar);
            let log_g = -d * ld - a2.ln();
            sum_log_g += log_g;
            sum_ratio += i * (-log_g).exp();
        }
        let sigma_sq = 2.0 * PI * sum_ratio / k;
        let value = (k * (sigma_sq / (2.0 * PI)).ln() + sum_log_g + k) / self.pg.t as f64;
        (value.is_finite() && sigma_sq > 0.0).then_some((sigma_sq, value))
    }
}

fn check_fit_length(t: usize, p: usize) -> Result<()> {
    if t < 8 * (p + 2) {
        return Err(Error::invalid(format!(
            "fitting an AR order {p} needs at least {} observations, got {t}",
            8 * (p + 2)
        )));
    }
    Ok(())
}

/// Fits FARIMA(p, d, 0) to a precomputed periodogram.
pub fn fit_whittle_periodogram(pg: &Periodogram, p: usize) -> Result<WhittleFit> {
    check_fit_length(pg.t, p)?;
    if pg.ordinates.iter().all(|&v| v == 0.0) {
        return Err(Error::Degenerate(
            "periodogram vanishes at every nonzero frequency; the innovation variance would be zero".into(),
        ));
    }
    let data = WhittleData::new(pg, p);
    let objective = |x: &[f64]| match data.profile(x[0], &x[1..]) {
        Some((_, v)) => v,
        None => f64::INFINITY,
    };
    let mut steps = vec![AR_STEP; p + 1];
    let mut best: Option<crate::optimize::Minimum> = None;
    for &d0 in &MULTISTART_D {
        let mut x0 = vec![0.0; p + 1];
        x0[0] = d0;
        steps[0] = if d0 + D_STEP <= D_MAX { D_STEP } else { -D_STEP };
        let m = nelder_mead(objective, &x0, &steps, NelderMeadOptions::default());
        if !m.value.is_finite() {
            continue;
        }
        if best.as_ref().is_none_or(|b| m.value < b.value) {
            best = Some(m);
        }
    }
    let best = best.ok_or_else(|| {
        Error::FitFailure(format!(
            "no multistart produced a finite Whittle objective for p = {p}"
        ))
    })?;
    let (sigma_sq, value) = data
        .profile(best.x[0], &best.x[1..])
        .ok_or_else(|| Error::FitFailure("optimum left the feasible region".into()))?;
    Ok(WhittleFit {
        d_hat: best.x[0],
        sigma_sq_hat: sigma_sq,
        ar_hat: best.x[1..].to_vec(),
        p,
        objective: value,
        aic: value + p as f64 / pg.t as f64,
        aic_unscaled_penalty: 2.0 * PI * value + p as f64 / pg.t as f64,
        converged: best.converged,
        iterations: best.iterations,
    })
}

/// Whittle fit of FARIMA(p, d, 0) with `σ²` profiled out.
pub fn fit_whittle(series: &TimeSeries, p: usize) -> Result<WhittleFit> {
    check_fit_length(series.len(), p)?;
    fit_whittle_periodogram(&full_periodogram(series)?, p)
}

/// Fits orders `0..=p_max` and returns the AIC minimizer (ties go to the
/// smaller order) together with every fit.
/// Which information criterion [`select_order_aic_with`] minimizes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AicPenalty {
    /// [`WhittleFit::aic`].
    #[default]
    Akaike,
    /// [`WhittleFit::aic_unscaled_penalty`]; tends to pick large orders.
    UnscaledPenalty,
}

impl AicPenalty {
    pub fn value(self, fit: &WhittleFit) -> f64 {
        match self {
            AicPenalty::Akaike => fit.aic,
            AicPenalty::UnscaledPenalty => fit.aic_unscaled_penalty,
        }
    }
}

/// Fits orders `0..=p_max` and returns the AIC minimizer (ties go to the
/// smaller order) together with every fit.
pub fn select_order_aic(series: &TimeSeries, p_max: usize) -> Result<(usize, Vec<WhittleFit>)> {
    select_order_aic_with(series, p_max, AicPenalty::default())
}

pub fn select_order_aic_with(
    series: &TimeSeries,
    p_max: usize,
    penalty: AicPenalty,
) -> Result<(usize, Vec<WhittleFit>)> {
    check_fit_length(series.len(), p_max)?;
    let pg = full_periodogram(series)?;
    let fits: Vec<WhittleFit> = (0..=p_max)
        .into_par_iter()
        .map(|p| fit_whittle_periodogram(&pg, p))
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (p, fit) in fits.iter().enumerate() {
        if penalty.value(fit) < penalty.value(&fits[best]) {
            best = p;
        }
    }
    Ok((best, fits))
}
