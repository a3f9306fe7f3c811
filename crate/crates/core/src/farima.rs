//! Stationary and time-varying FARIMA models: specification, simulation,
//! spectral densities and the theoretical stationarity distance.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractional::{frac_integrate_coeffs, frac_integrate_values};
use crate::quadrature::{gauss_legendre_on, simpson_weights};
use crate::rng::GaussianSource;
use crate::series::TimeSeries;

/// Default number of pre-sample steps discarded by the simulators.
pub const DEFAULT_BURN_IN: usize = 1 << 13;

/// Margin kept between the AR inverse roots and the unit circle.
pub const STABILITY_MARGIN: f64 = 1e-8;

/// True when every inverse root of `1 − Σ a_j z^j` has modulus below
/// `1 − margin`.
///
/// Scales the coefficients by `r^{-j}` (`r = 1 − margin`) and runs the
/// Schur–Cohn step-down recursion, which accepts iff all reflection
/// coefficients lie strictly inside `(−1, 1)`.
pub fn ar_is_stable(ar: &[f64], margin: f64) -> bool {
    let p = ar.len();
    if p == 0 {
        return true;
    }
    let r = 1.0 - margin;
    let mut phi: Vec<f64> = ar
        .iter()
        .enumerate()
        .map(|(j, a)| a / r.powi(j as i32 + 1))
        .collect();
    if phi.iter().any(|v| !v.is_finite()) {
        return false;
    }
    for m in (1..=p).rev() {
        let kappa = phi[m - 1];
        if kappa.abs() >= 1.0 {
            return false;
        }
        let denom = 1.0 - kappa * kappa;
        let prev: Vec<f64> = (1..m)
            .map(|j| (phi[j - 1] + kappa * phi[m - j - 1]) / denom)
            .collect();
        phi = prev;
    }
    true
}

/// A coefficient function of rescaled time `u ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CoefFn {
    Const { value: f64 },
    /// `amplitude · cos(1.5 − cos(4πu))`.
    CosComposite { amplitude: f64 },
    /// `amplitude · sin(4πu)`.
    SinAr { amplitude: f64 },
    /// `√sin(πu)`.
    SqrtSinSigma,
    /// `start + (end − start)·u`.
    Linear { start: f64, end: f64 },
}

impl CoefFn {
    pub fn constant(value: f64) -> Self {
        CoefFn::Const { value }
    }

    pub fn eval(&self, u: f64) -> f64 {
        match *self {
            CoefFn::Const { value } => value,
            CoefFn::CosComposite { amplitude } => amplitude * (1.5 - (4.0 * PI * u).cos()).cos(),
            CoefFn::SinAr { amplitude } => amplitude * (4.0 * PI * u).sin(),
            CoefFn::SqrtSinSigma => (PI * u).sin().max(0.0).sqrt(),
            CoefFn::Linear { start, end } => start + (end - start) * u,
        }
    }

    pub fn is_constant(&self) -> bool {
        match *self {
            CoefFn::Const { .. } => true,
            CoefFn::CosComposite { amplitude } | CoefFn::SinAr { amplitude } => amplitude == 0.0,
            CoefFn::SqrtSinSigma => false,
            CoefFn::Linear { start, end } => start == end,
        }
    }
}

/// Stationary FARIMA(p, d, q): `a(B)(1 − B)^d X_t = b(B) σ Z_t` with
/// `a(z) = 1 − Σ a_j z^j`, `b(z) = 1 + Σ b_j z^j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FarimaSpec {
    pub d: f64,
    #[serde(default)]
    pub ar: Vec<f64>,
    #[serde(default)]
    pub ma: Vec<f64>,
    #[serde(default = "one")]
    pub sigma: f64,
}

fn one() -> f64 {
    1.0
}

impl FarimaSpec {
    pub fn new(d: f64, ar: Vec<f64>, ma: Vec<f64>, sigma: f64) -> Result<Self> {
        let spec = FarimaSpec { d, ar, ma, sigma };
        spec.validate()?;
        Ok(spec)
    }

    /// `(1 − φB)(1 − B)^d X_t = Z_t`.
    pub fn ar1(d: f64, phi: f64) -> Self {
        FarimaSpec { d, ar: vec![phi], ma: vec![], sigma: 1.0 }
    }

    /// `(1 − B)^d X_t = (1 + θB) Z_t`.
    pub fn ma1(d: f64, theta: f64) -> Self {
        FarimaSpec { d, ar: vec![], ma: vec![theta], sigma: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.d >= 0.0 && self.d < 0.5) {
            return Err(Error::invalid(format!("d must lie in [0, 0.5), got {}", self.d)));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::invalid(format!("sigma must be positive, got {}", self.sigma)));
        }
        if self.ar.iter().chain(&self.ma).any(|c| !c.is_finite()) {
            return Err(Error::invalid("ARMA coefficients must be finite"));
        }
        if !ar_is_stable(&self.ar, STABILITY_MARGIN) {
            return Err(Error::invalid(format!(
                "AR polynomial with coefficients {:?} has a root on or inside the unit circle",
                self.ar
            )));
        }
        Ok(())
    }

    pub fn to_time_varying(&self) -> TvFarimaSpec {
        TvFarimaSpec {
            d: CoefFn::constant(self.d),
            ar: self.ar.iter().map(|&a| CoefFn::constant(a)).collect(),
            ma: self.ma.iter().map(|&b| CoefFn::constant(b)).collect(),
            sigma: CoefFn::constant(self.sigma),
        }
    }
}

/// Time-varying FARIMA with coefficient functions of `u = t/T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TvFarimaSpec {
    pub d: CoefFn,
    #[serde(default)]
    pub ar: Vec<CoefFn>,
    #[serde(default)]
    pub ma: Vec<CoefFn>,
    #[serde(default = "unit_sigma")]
    pub sigma: CoefFn,
}

fn unit_sigma() -> CoefFn {
    CoefFn::constant(1.0)
}

/// Parameters of a time-varying model frozen at one rescaled time.
#[derive(Debug, Clone, PartialEq)]
pub struct FrozenModel {
    pub d: f64,
    pub ar: Vec<f64>,
    pub ma: Vec<f64>,
    pub sigma: f64,
}

const VALIDATION_GRID: usize = 1024;

fn grid(points: usize) -> impl Iterator<Item = f64> {
    (0..points).map(move |i| i as f64 / (points - 1) as f64)
}

impl TvFarimaSpec {
    /// MA(1) with coefficient `0.8 cos(1.5 − cos(4πu))`.
    pub fn tv_ma_cos(d: f64) -> Self {
        TvFarimaSpec {
            d: CoefFn::constant(d),
            ar: vec![],
            ma: vec![CoefFn::CosComposite { amplitude: 0.8 }],
            sigma: unit_sigma(),
        }
    }

    /// AR(1) with coefficient `0.6 sin(4πu)`.
    pub fn tv_ar_sin(d: f64) -> Self {
        TvFarimaSpec {
            d: CoefFn::constant(d),
            ar: vec![CoefFn::SinAr { amplitude: 0.6 }],
            ma: vec![],
            sigma: unit_sigma(),
        }
    }

    /// Innovation scale `√sin(πu)`.
    pub fn tv_sigma_sqrt_sin(d: f64) -> Self {
        TvFarimaSpec {
            d: CoefFn::constant(d),
            ar: vec![],
            ma: vec![],
            sigma: CoefFn::SqrtSinSigma,
        }
    }

    /// MA(1) with coefficient `θ(u) = start + (end − start)u`.
    pub fn tv_ma_linear(d: f64, start: f64, end: f64) -> Self {
        TvFarimaSpec {
            d: CoefFn::constant(d),
            ar: vec![],
            ma: vec![CoefFn::Linear { start, end }],
            sigma: unit_sigma(),
        }
    }

    pub fn frozen(&self, u: f64) -> FrozenModel {
        FrozenModel {
            d: self.d.eval(u),
            ar: self.ar.iter().map(|f| f.eval(u)).collect(),
            ma: self.ma.iter().map(|f| f.eval(u)).collect(),
            sigma: self.sigma.eval(u),
        }
    }

    /// Checks every frozen model on a 1024-point grid of `u`.
    ///
    /// The innovation scale may vanish at isolated points (e.g. `√sin(πu)`
    /// at the endpoints) but must never be negative.
    pub fn validate(&self) -> Result<()> {
        for u in grid(VALIDATION_GRID) {
            let f = self.frozen(u);
            if !(f.d >= 0.0 && f.d < 0.5) {
                return Err(Error::invalid(format!("d(u) = {} outside [0, 0.5) at u = {u}", f.d)));
            }
            if !(f.sigma.is_finite() && f.sigma >= 0.0) {
                return Err(Error::invalid(format!("sigma(u) = {} invalid at u = {u}", f.sigma)));
            }
            if f.ar.iter().chain(&f.ma).any(|c| !c.is_finite()) {
                return Err(Error::invalid(format!("non-finite ARMA coefficient at u = {u}")));
            }
            if !ar_is_stable(&f.ar, STABILITY_MARGIN) {
                return Err(Error::invalid(format!(
                    "AR polynomial {:?} is not stable at u = {u}",
                    f.ar
                )));
            }
        }
        Ok(())
    }

    /// Grid maximum of `d(u)`.
    pub fn d_max(&self) -> f64 {
        grid(VALIDATION_GRID)
            .map(|u| self.d.eval(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_stationary(&self) -> bool {
        self.d.is_constant()
            && self.sigma.is_constant()
            && self.ar.iter().chain(&self.ma).all(CoefFn::is_constant)
    }
}

/// Simulates a stationary FARIMA path of length `t`.
///
/// Runs the ARMA recursion from zero initial values over `burn_in + t`
/// steps, fractionally integrates the whole path and returns its last `t`
/// values.
pub fn simulate_farima(
    spec: &FarimaSpec,
    t: usize,
    rng: &mut GaussianSource,
    burn_in: usize,
) -> Result<TimeSeries> {
    spec.validate()?;
    simulate_path(&spec.to_time_varying(), t, rng, burn_in)
}

/// Simulates a time-varying FARIMA path with coefficients frozen at `u = t/T`
/// for each `t = 1..T` and at `u = 0` during burn-in.
///
/// A time-varying `d(u)` uses per-time integration weights
/// `Σ_{j<t} ψ_j(d(t/T)) Y_{t−j}`, an approximation of the locally stationary
/// solution.
pub fn simulate_tvfarima(
    spec: &TvFarimaSpec,
    t: usize,
    rng: &mut GaussianSource,
    burn_in: usize,
) -> Result<TimeSeries> {
    spec.validate()?;
    simulate_path(spec, t, rng, burn_in)
}

fn simulate_path(
    spec: &TvFarimaSpec,
    t: usize,
    rng: &mut GaussianSource,
    burn_in: usize,
) -> Result<TimeSeries> {
    if t < 2 {
        return Err(Error::invalid(format!("sample size must be at least 2, got {t}")));
    }
    let total = burn_in + t;
    let rescaled = |step: usize| -> f64 {
        if step < burn_in {
            0.0
        } else {
            (step - burn_in + 1) as f64 / t as f64
        }
    };
    let p = spec.ar.len();
    let q = spec.ma.len();
    let mut eps = vec![0.0; total];
    let mut y = vec![0.0; total];
    let mut ar = vec![0.0; p];
    let mut ma = vec![0.0; q];
    for s in 0..total {
        let u = rescaled(s);
        for (c, f) in ar.iter_mut().zip(&spec.ar) {
            *c = f.eval(u);
        }
        for (c, f) in ma.iter_mut().zip(&spec.ma) {
            *c = f.eval(u);
        }
        eps[s] = spec.sigma.eval(u) * rng.next_normal();
        let mut v = eps[s];
        for (j, b) in ma.iter().enumerate() {
            if s > j {
                v += b * eps[s - j - 1];
            }
        }
        for (j, a) in ar.iter().enumerate() {
            if s > j {
                v += a * y[s - j - 1];
            }
        }
        y[s] = v;
    }
    let x = match spec.d {
        CoefFn::Const { value } => frac_integrate_values(&y, value),
        _ => {
            let mut out = vec![0.0; total];
            for (s, o) in out.iter_mut().enumerate() {
                let d = spec.d.eval(rescaled(s));
                let psi = frac_integrate_coeffs(d, s + 1);
                *o = (0..=s).map(|j| psi[j] * y[s - j]).sum();
            }
            out
        }
    };
    TimeSeries::new(x[burn_in..].to_vec())
}

/// `σ²/(2π) · |b(e^{−iλ})|² / |a(e^{−iλ})|² · |1 − e^{−iλ}|^{−2d}`.
pub fn frozen_spectral_density(model: &FrozenModel, lambda: f64) -> f64 {
    let poly_sq = |coefs: &[f64], sign: f64| {
        let (mut re, mut im) = (1.0, 0.0);
        for (j, c) in coefs.iter().enumerate() {
            let (s, co) = ((j + 1) as f64 * lambda).sin_cos();
            re += sign * c * co;
            im -= sign * c * s;
        }
        re * re + im * im
    };
    let ma = poly_sq(&model.ma, 1.0);
    let ar = poly_sq(&model.ar, -1.0);
    let long = (4.0 * (0.5 * lambda).sin().powi(2)).powf(-model.d);
    model.sigma * model.sigma / (2.0 * PI) * ma / ar * long
}

/// Time-varying spectral density `f(u, λ)` for `λ ∈ (0, π]`.
pub fn tv_spectral_density(spec: &TvFarimaSpec, u: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::invalid(format!(
            "spectral density has a pole at 0; lambda must be positive, got {lambda}"
        )));
    }
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::invalid(format!("u must lie in [0, 1], got {u}")));
    }
    Ok(frozen_spectral_density(&spec.frozen(u), lambda))
}

/// Quadrature value of the stationarity distance with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceEstimate {
    pub value: f64,
    /// Difference between the fine rule and a coarser companion rule.
    pub error_estimate: f64,
}

const U_POINTS: usize = 257;
const LAMBDA_SPLIT: f64 = 1e-3;

/// `D² = ∫₀¹ ∫_{−π}^{π} (f(u,λ) − ∫₀¹ f(v,λ) dv)² dλ du`.
///
/// Symmetric in `λ`, so twice the integral over `(0, π]`. Near the pole the
/// substitution `λ = λ₀ s^m`, `m = 1/(1 − 4 d_max)`, flattens the
/// `λ^{−4d}` singularity on `(0, λ₀]`; `[λ₀, π]` uses log-graded
/// Gauss–Legendre panels. The `u` integral is composite Simpson on 257 nodes.
pub fn theoretical_distance(spec: &TvFarimaSpec) -> Result<DistanceEstimate> {
    spec.validate()?;
    let d_max = spec.d_max();
    if d_max >= 0.25 {
        return Err(Error::Domain(format!(
            "the distance is infinite when sup d(u) >= 1/4 (got {d_max})"
        )));
    }
    let fine = distance_rule(spec, d_max, 48, 16);
    let coarse = distance_rule(spec, d_max, 24, 10);
    Ok(DistanceEstimate {
        value: fine,
        error_estimate: (fine - coarse).abs(),
    })
}

fn distance_rule(spec: &TvFarimaSpec, d_max: f64, panels: usize, order: usize) -> f64 {
    let weights = simpson_weights(U_POINTS);
    let models: Vec<FrozenModel> = grid(U_POINTS).map(|u| spec.frozen(u)).collect();
    let inner = |lambda: f64| -> f64 {
        let f: Vec<f64> = models
            .iter()
            .map(|m| frozen_spectral_density(m, lambda))
            .collect();
        let mean: f64 = f.iter().zip(&weights).map(|(v, w)| v * w).sum();
        f.iter().zip(&weights).map(|(v, w)| w * (v - mean).powi(2)).sum()
    };

    // (0, λ₀]: λ = λ₀ s^m, dλ = m λ₀ s^{m−1} ds.
    let m = 1.0 / (1.0 - 4.0 * d_max);
    let (s_nodes, s_weights) = gauss_legendre_on(4 * order, 0.0, 1.0);
    let near: f64 = s_nodes
        .iter()
        .zip(&s_weights)
        .map(|(&s, &w)| {
            let lambda = LAMBDA_SPLIT * s.powf(m);
            w * inner(lambda) * m * LAMBDA_SPLIT * s.powf(m - 1.0)
        })
        .sum();

    // [λ₀, 1] log-graded, [1, π] uniform.
    let log_panels = panels * 2 / 3;
    let lin_panels = panels - log_panels;
    let mut edges: Vec<f64> = (0..=log_panels)
        .map(|i| (LAMBDA_SPLIT.ln() * (1.0 - i as f64 / log_panels as f64)).exp())
        .collect();
    edges.extend((1..=lin_panels).map(|i| 1.0 + (PI - 1.0) * i as f64 / lin_panels as f64));
    let far: f64 = edges
        .windows(2)
        .map(|e| {
            let (x, w) = gauss_legendre_on(order, e[0], e[1]);
            x.iter().zip(&w).map(|(&l, &w)| w * inner(l)).sum::<f64>()
        })
        .sum();
    2.0 * (near + far)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stability_check() {
        assert!(ar_is_stable(&[], STABILITY_MARGIN));
        assert!(ar_is_stable(&[0.9], STABILITY_MARGIN));
        assert!(!ar_is_stable(&[1.0], STABILITY_MARGIN));
        assert!(!ar_is_stable(&[-1.01], STABILITY_MARGIN));
        // (1 − 0.5z)(1 − 0.8z) = 1 − 1.3z + 0.4z²
        assert!(ar_is_stable(&[1.3, -0.4], STABILITY_MARGIN));
        // (1 − 0.5z)(1 − 1.25z) has a root inside the unit disc
        assert!(!ar_is_stable(&[1.75, -0.625], STABILITY_MARGIN));
        // complex pair with modulus 0.95
        let r: f64 = 0.95;
        assert!(ar_is_stable(&[2.0 * r * 1.0f64.cos(), -r * r], STABILITY_MARGIN));
        assert!(!ar_is_stable(&[2.0 * 1.0f64.cos(), -1.0], STABILITY_MARGIN));
    }

    #[test]
    fn stationary_spec_validation() {
        assert!(FarimaSpec::new(0.5, vec![], vec![], 1.0).is_err());
        assert!(FarimaSpec::new(0.2, vec![1.1], vec![], 1.0).is_err());
        assert!(FarimaSpec::new(0.2, vec![], vec![], 0.0).is_err());
        assert!(FarimaSpec::new(0.2, vec![0.5], vec![0.3], 2.0).is_ok());
    }

    #[test]
    fn tv_validation_names_u() {
        let spec = TvFarimaSpec {
            d: CoefFn::constant(0.1),
            ar: vec![CoefFn::Linear { start: 0.0, end: 1.5 }],
            ma: vec![],
            sigma: unit_sigma(),
        };
        match spec.validate() {
            Err(Error::InvalidArgument(msg)) => assert!(msg.contains("u = "), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn builtin_coefficients() {
        let spec = TvFarimaSpec::tv_ma_cos(0.2);
        let u = 0.3;
        let want = 0.8 * (1.5 - (4.0 * PI * u).cos()).cos();
        assert_eq!(spec.frozen(u).ma, vec![want]);
        let spec = TvFarimaSpec::tv_sigma_sqrt_sin(0.2);
        assert_eq!(spec.frozen(0.5).sigma, 1.0);
        assert!(spec.frozen(0.5).ar.is_empty() && spec.frozen(0.5).ma.is_empty());
        let spec = TvFarimaSpec::tv_ar_sin(0.2);
        assert!((spec.frozen(0.125).ar[0] - 0.6).abs() < 1e-15);
        for s in [
            TvFarimaSpec::tv_ma_cos(0.2),
            TvFarimaSpec::tv_ar_sin(0.2),
            TvFarimaSpec::tv_sigma_sqrt_sin(0.2),
        ] {
            s.validate().unwrap();
            assert!(!s.is_stationary());
        }
    }

    #[test]
    fn white_noise_passes_through() {
        let spec = FarimaSpec::new(0.0, vec![], vec![], 1.0).unwrap();
        let x = simulate_farima(&spec, 100, &mut GaussianSource::new(3), 50).unwrap();
        let z = GaussianSource::new(3).normals(150);
        assert_eq!(x.values(), &z[50..]);
    }

    #[test]
    fn simulation_is_deterministic_and_homogeneous() {
        let spec = FarimaSpec::new(0.3, vec![0.4], vec![0.2], 1.0).unwrap();
        let a = simulate_farima(&spec, 500, &mut GaussianSource::new(8), 2000).unwrap();
        let b = simulate_farima(&spec, 500, &mut GaussianSource::new(8), 2000).unwrap();
        assert_eq!(a, b);
        let spec3 = FarimaSpec { sigma: 3.0, ..spec };
        let c = simulate_farima(&spec3, 500, &mut GaussianSource::new(8), 2000).unwrap();
        for (x, y) in a.values().iter().zip(c.values()) {
            assert!((3.0 * x - y).abs() <= 1e-12 * y.abs().max(1.0));
        }
    }

    #[test]
    fn constant_tv_spec_reduces_to_stationary() {
        let spec = FarimaSpec::new(0.2, vec![0.5], vec![-0.3], 1.5).unwrap();
        let a = simulate_farima(&spec, 300, &mut GaussianSource::new(21), 700).unwrap();
        let b = simulate_tvfarima(&spec.to_time_varying(), 300, &mut GaussianSource::new(21), 700)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn time_varying_d_path_runs() {
        let spec = TvFarimaSpec {
            d: CoefFn::Linear { start: 0.05, end: 0.2 },
            ar: vec![],
            ma: vec![],
            sigma: unit_sigma(),
        };
        let x = simulate_tvfarima(&spec, 256, &mut GaussianSource::new(2), 64).unwrap();
        assert_eq!(x.len(), 256);
    }

    #[test]
    fn density_special_values() {
        let wn = FarimaSpec::new(0.0, vec![], vec![], 1.0).unwrap().to_time_varying();
        for (u, l) in [(0.0, 0.1), (0.5, 1.0), (1.0, PI)] {
            assert!((tv_spectral_density(&wn, u, l).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        }
        let fd = FarimaSpec::new(0.2, vec![], vec![], 1.0).unwrap().to_time_varying();
        let v = tv_spectral_density(&fd, 0.5, PI).unwrap();
        assert!((v - 2f64.powf(-0.4) / (2.0 * PI)).abs() < 1e-15);
        assert!(tv_spectral_density(&fd, 0.5, 0.0).is_err());
        assert!(tv_spectral_density(&fd, 0.5, -1.0).is_err());
    }

    #[test]
    fn pole_rate_at_origin() {
        let spec = TvFarimaSpec::tv_ma_cos(0.2);
        let u = 0.4;
        let scaled: Vec<f64> = (1..=6)
            .map(|e| {
                let l = 10f64.powi(-e);
                tv_spectral_density(&spec, u, l).unwrap() * l.powf(0.4)
            })
            .collect();
        let limit = *scaled.last().unwrap();
        assert!(limit > 0.0 && limit.is_finite());
        for w in scaled.windows(2) {
            assert!((w[1] - limit).abs() <= (w[0] - limit).abs() + 1e-15);
        }
    }

    #[test]
    fn stationary_distance_vanishes() {
        let spec = FarimaSpec::new(0.2, vec![0.5], vec![0.3], 1.0).unwrap().to_time_varying();
        let d = theoretical_distance(&spec).unwrap();
        assert!(d.value.abs() < 1e-10, "{d:?}");
    }

    #[test]
    fn distance_domain_error() {
        let spec = FarimaSpec::new(0.3, vec![], vec![], 1.0).unwrap().to_time_varying();
        assert!(matches!(theoretical_distance(&spec), Err(Error::Domain(_))));
    }

    #[test]
    fn tv_ma_linear_closed_form() {
        // f = (1 + θ² + 2θ cos λ)/(2π) with θ(u) = u:
        // D² = (1/2π)∫(u² − 1/3)² du + (1/π)∫(u − 1/2)² du = 23/(180π)
        let spec = TvFarimaSpec::tv_ma_linear(0.0, 0.0, 1.0);
        let d = theoretical_distance(&spec).unwrap();
        let want = 23.0 / (180.0 * PI);
        assert!((d.value - want).abs() < 1e-6, "{} vs {want}", d.value);
    }

    #[test]
    fn sqrt_sin_closed_form() {
        let spec = TvFarimaSpec::tv_sigma_sqrt_sin(0.0);
        let d = theoretical_distance(&spec).unwrap();
        let want = (0.5 - 4.0 / (PI * PI)) / (2.0 * PI);
        assert!((d.value - want).abs() < 1e-7, "{} vs {want}", d.value);
    }

    #[test]
    fn long_memory_distance_converges() {
        let spec = TvFarimaSpec::tv_ma_cos(0.2);
        let d = theoretical_distance(&spec).unwrap();
        assert!(d.value > 0.0);
        assert!(d.error_estimate < 1e-3 * d.value, "{d:?}");
    }
}
