//! Monte Carlo experiments: size tables, power curves and the variance
//! comparison between Riemann-sum and integrated squared periodograms.
//!
//! Every run `r` of scenario `s` for model `m` simulates from a source keyed
//! by `(seed, m, s, r)`, and a bootstrap inside that run keys its replicates
//! by the run seed. Results are therefore identical for any thread count.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bootstrap::{bootstrap_outcome, BootstrapConfig};
use crate::error::{Error, Result};
use crate::estimators::{f1_hat, summarize, TestMethod};
use crate::farima::{simulate_farima, simulate_tvfarima, FarimaSpec, TvFarimaSpec, DEFAULT_BURN_IN};
use crate::normal::normal_quantile;
use crate::rng::{derive_seed, GaussianSource};
use crate::series::{BlockScheme, TimeSeries};
use crate::spectral::{integrated_squared_local_periodogram, local_periodogram_matrix};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Fraction of failed runs above which a cell is flagged.
const FAILURE_FLAG_RATE: f64 = 0.01;

/// A `(T, N)` design, labelled as in the published size tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub label: String,
    pub t: usize,
    pub n: usize,
}

impl Scenario {
    pub fn new(label: impl Into<String>, t: usize, n: usize) -> Self {
        Scenario { label: label.into(), t, n }
    }

    pub fn m(&self) -> usize {
        self.t / self.n.max(1)
    }
}

/// The fourteen designs A1–D5.
pub fn table_scenarios() -> Vec<Scenario> {
    [
        ("A1", 128, 16),
        ("A2", 128, 8),
        ("B1", 256, 32),
        ("B2", 256, 16),
        ("B3", 256, 8),
        ("C1", 512, 64),
        ("C2", 512, 32),
        ("C3", 512, 16),
        ("C4", 512, 8),
        ("D1", 1024, 128),
        ("D2", 1024, 64),
        ("D3", 1024, 32),
        ("D4", 1024, 16),
        ("D5", 1024, 8),
    ]
    .into_iter()
    .map(|(l, t, n)| Scenario::new(l, t, n))
    .collect()
}

pub fn table_scenario(label: &str) -> Option<Scenario> {
    table_scenarios().into_iter().find(|s| s.label == label)
}

/// Named models used in the size and power studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuiltinModel {
    /// `(1 − φB)(1 − B)^d X = Z`, `coefficient = φ`.
    NullAr1,
    /// `(1 − B)^d X = (1 + θB) Z`, `coefficient = θ`.
    NullMa1,
    /// `(1 − B)^d X = Z_t + 0.8 cos(1.5 − cos(4πt/T)) Z_{t−1}`.
    TvMaCos,
    /// `(1 − 0.6 sin(4πt/T) B)(1 − B)^d X = Z`.
    TvArSin,
    /// `(1 − B)^d X = √sin(πt/T) Z`.
    TvSigmaSqrtSin,
}

impl BuiltinModel {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "null-ar1" => Some(BuiltinModel::NullAr1),
            "null-ma1" => Some(BuiltinModel::NullMa1),
            "tv-ma-cos" => Some(BuiltinModel::TvMaCos),
            "tv-ar-sin" => Some(BuiltinModel::TvArSin),
            "tv-sigma-sqrt-sin" => Some(BuiltinModel::TvSigmaSqrtSin),
            _ => None,
        }
    }

    pub const NAMES: [&'static str; 5] =
        ["null-ar1", "null-ma1", "tv-ma-cos", "tv-ar-sin", "tv-sigma-sqrt-sin"];
}

/// Data-generating process of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelSpec {
    Farima(FarimaSpec),
    TvFarima(TvFarimaSpec),
    Builtin {
        name: BuiltinModel,
        d: f64,
        #[serde(default)]
        coefficient: f64,
    },
}

impl ModelSpec {
    pub fn builtin(name: BuiltinModel, d: f64, coefficient: f64) -> Self {
        ModelSpec::Builtin { name, d, coefficient }
    }

    /// Resolves builtins to an explicit time-varying specification.
    pub fn to_tv(&self) -> TvFarimaSpec {
        match self {
            ModelSpec::Farima(s) => s.to_time_varying(),
            ModelSpec::TvFarima(s) => s.clone(),
            ModelSpec::Builtin { name, d, coefficient } => match name {
                BuiltinModel::NullAr1 => FarimaSpec::ar1(*d, *coefficient).to_time_varying(),
                BuiltinModel::NullMa1 => FarimaSpec::ma1(*d, *coefficient).to_time_varying(),
                BuiltinModel::TvMaCos => TvFarimaSpec::tv_ma_cos(*d),
                BuiltinModel::TvArSin => TvFarimaSpec::tv_ar_sin(*d),
                BuiltinModel::TvSigmaSqrtSin => TvFarimaSpec::tv_sigma_sqrt_sin(*d),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::Farima(s) => s.validate(),
            other => other.to_tv().validate(),
        }
    }

    pub fn simulate(&self, t: usize, rng: &mut GaussianSource, burn_in: usize) -> Result<TimeSeries> {
        match self {
            ModelSpec::Farima(s) => simulate_farima(s, t, rng, burn_in),
            other => simulate_tvfarima(&other.to_tv(), t, rng, burn_in),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledModel {
    pub label: String,
    pub model: ModelSpec,
}

/// Bootstrap settings shared by every run of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BootstrapSettings {
    #[serde(default = "default_b")]
    pub b: usize,
    #[serde(default = "default_p_max")]
    pub p_max: usize,
}

fn default_b() -> usize {
    200
}

fn default_p_max() -> usize {
    10
}

impl Default for BootstrapSettings {
    fn default() -> Self {
        BootstrapSettings { b: default_b(), p_max: default_p_max() }
    }
}

fn default_burn_in() -> usize {
    DEFAULT_BURN_IN
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Experiment {
    /// Table columns: one data-generating process per entry.
    pub models: Vec<LabeledModel>,
    /// Table rows.
    pub scenarios: Vec<Scenario>,
    pub alpha_levels: Vec<f64>,
    pub n_runs: usize,
    pub method: TestMethod,
    #[serde(default)]
    pub bootstrap: Option<BootstrapSettings>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_burn_in")]
    pub burn_in: usize,
}

impl Experiment {
    /// Collects every constraint violation.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.models.is_empty() {
            problems.push("no models given".to_string());
        }
        if self.scenarios.is_empty() {
            problems.push("empty scenario grid".to_string());
        }
        if self.alpha_levels.is_empty() {
            problems.push("no alpha levels given".to_string());
        }
        if self.n_runs == 0 {
            problems.push("n_runs must be positive".to_string());
        }
        for m in &self.models {
            if let Err(e) = m.model.validate() {
                problems.push(format!("model '{}': {e}", m.label));
            }
        }
        for s in &self.scenarios {
            if let Err(e) = BlockScheme::new(s.t, s.n) {
                problems.push(format!("scenario '{}': {e}", s.label));
            } else if s.t < 2 * s.n {
                problems.push(format!("scenario '{}': T = {} is shorter than 2N", s.label, s.t));
            }
        }
        let b = self.bootstrap.clone().unwrap_or_default();
        for &a in &self.alpha_levels {
            if !(a > 0.0 && a < 1.0) {
                problems.push(format!("alpha {a} outside (0, 1)"));
            } else if self.method == TestMethod::Bootstrap {
                if let Err(e) = BootstrapConfig::new(b.b, a, b.p_max, 8, 0).validate() {
                    problems.push(e.to_string());
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::invalid(problems.join("; ")))
        }
    }

    fn run_seed(&self, model: usize, scenario: usize, run: usize) -> u64 {
        derive_seed(
            derive_seed(derive_seed(self.seed, model as u64), scenario as u64),
            run as u64,
        )
    }
}

/// Rejection tallies for one (scenario, model) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellReport {
    pub scenario: String,
    pub t: usize,
    pub n: usize,
    pub m: usize,
    pub model: String,
    pub n_runs: usize,
    pub n_ok: usize,
    pub n_failed: usize,
    /// More than 1% of runs failed.
    pub flagged: bool,
    pub alpha_levels: Vec<f64>,
    pub rejections: Vec<usize>,
    pub frequencies: Vec<f64>,
    /// `√(p̂(1 − p̂)/n_ok)`.
    pub std_errors: Vec<f64>,
    /// First few distinct failure messages.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McReport {
    pub schema_version: u32,
    pub experiment: Experiment,
    pub cells: Vec<CellReport>,
    pub series_simulated: usize,
    pub bootstrap_replicates: usize,
    pub wall_clock_secs: f64,
}

impl McReport {
    pub fn cell(&self, scenario: &str, model: &str) -> Option<&CellReport> {
        self.cells
            .iter()
            .find(|c| c.scenario == scenario && c.model == model)
    }

    /// One row per scenario; columns are `model × alpha`.
    pub fn to_table_csv(&self) -> String {
        let exp = &self.experiment;
        let mut out = String::from("scenario,T,N,M");
        for m in &exp.models {
            for a in &exp.alpha_levels {
                let _ = write!(out, ",{}@{}", csv_field(&m.label), a);
            }
        }
        out.push('\n');
        for s in &exp.scenarios {
            let _ = write!(out, "{},{},{},{}", csv_field(&s.label), s.t, s.n, s.m());
            for m in &exp.models {
                let cell = self.cell(&s.label, &m.label);
                for i in 0..exp.alpha_levels.len() {
                    match cell {
                        Some(c) if c.n_ok > 0 => {
                            let _ = write!(out, ",{:.3}", c.frequencies[i]);
                        }
                        _ => out.push_str(",NA"),
                    }
                }
            }
            out.push('\n');
        }
        out
    }

    /// Long format `scenario,T,N,M,model,alpha,power,std_error`.
    pub fn to_power_csv(&self) -> String {
        let mut out = String::from("scenario,T,N,M,model,alpha,power,std_error\n");
        for c in &self.cells {
            for (i, a) in c.alpha_levels.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    csv_field(&c.scenario),
                    c.t,
                    c.n,
                    c.m,
                    csv_field(&c.model),
                    a,
                    c.frequencies[i],
                    c.std_errors[i]
                );
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Decisions at every alpha level for one simulated series.
fn run_once(exp: &Experiment, model: &ModelSpec, scenario: &Scenario, seed: u64) -> Result<Vec<bool>> {
    let mut rng = GaussianSource::new(seed);
    let x = model.simulate(scenario.t, &mut rng, exp.burn_in)?;
    match exp.method {
        TestMethod::Asymptotic => {
            let summary = summarize(&x, scenario.n)?;
            if summary.tau1_sq_hat <= 0.0 {
                return Err(Error::Degenerate("tau1^2 = 0".into()));
            }
            exp.alpha_levels
                .iter()
                .map(|&a| Ok(summary.statistic >= normal_quantile(1.0 - a)?))
                .collect()
        }
        TestMethod::Bootstrap => {
            let b = exp.bootstrap.clone().unwrap_or_default();
            let outcome = bootstrap_outcome(&x, scenario.n, b.b, b.p_max, derive_seed(seed, 0xB007))?;
            exp.alpha_levels
                .iter()
                .map(|&a| Ok(outcome.decide(a)?.1))
                .collect()
        }
    }
}

/// Runs every (scenario, model) cell, calling `progress` after each one.
pub fn run_experiment_with_progress<F>(exp: &Experiment, mut progress: F) -> Result<McReport>
where
    F: FnMut(&CellReport),
{
    exp.validate()?;
    let start = Instant::now();
    let mut cells = Vec::new();
    let n_alpha = exp.alpha_levels.len();
    for (si, scenario) in exp.scenarios.iter().enumerate() {
        for (mi, lm) in exp.models.iter().enumerate() {
            let outcomes: Vec<Result<Vec<bool>>> = (0..exp.n_runs)
                .into_par_iter()
                .map(|r| run_once(exp, &lm.model, scenario, exp.run_seed(mi, si, r)))
                .collect();
            let mut rejections = vec![0usize; n_alpha];
            let mut n_ok = 0;
            let mut failures: Vec<String> = Vec::new();
            for o in outcomes {
                match o {
                    Ok(dec) => {
                        n_ok += 1;
                        for (r, d) in rejections.iter_mut().zip(dec) {
                            *r += d as usize;
                        }
                    }
                    Err(e) => {
                        let msg = e.to_string();
                        if failures.len() < 5 && !failures.contains(&msg) {
                            failures.push(msg);
                        }
                    }
                }
            }
            let n_failed = exp.n_runs - n_ok;
            let frequencies: Vec<f64> = rejections
                .iter()
                .map(|&r| if n_ok > 0 { r as f64 / n_ok as f64 } else { f64::NAN })
                .collect();
            let std_errors = frequencies
                .iter()
                .map(|p| (p * (1.0 - p) / n_ok.max(1) as f64).sqrt())
                .collect();
            let cell = CellReport {
                scenario: scenario.label.clone(),
                t: scenario.t,
                n: scenario.n,
                m: scenario.m(),
                model: lm.label.clone(),
                n_runs: exp.n_runs,
                n_ok,
                n_failed,
                flagged: n_failed as f64 > FAILURE_FLAG_RATE * exp.n_runs as f64,
                alpha_levels: exp.alpha_levels.clone(),
                rejections,
                frequencies,
                std_errors,
                failures,
            };
            progress(&cell);
            cells.push(cell);
        }
    }
    let series = exp.n_runs * exp.scenarios.len() * exp.models.len();
    let reps = match exp.method {
        TestMethod::Bootstrap => series * exp.bootstrap.clone().unwrap_or_default().b,
        TestMethod::Asymptotic => 0,
    };
    Ok(McReport {
        schema_version: REPORT_SCHEMA_VERSION,
        experiment: exp.clone(),
        cells,
        series_simulated: series,
        bootstrap_replicates: reps,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

/// Rejection frequencies of an experiment.
pub fn run_experiment(exp: &Experiment) -> Result<McReport> {
    run_experiment_with_progress(exp, |_| {})
}

/// Power of the test over alternative models; identical machinery to
/// [`run_experiment`], reported per scenario.
pub fn run_power_curve(exp: &Experiment) -> Result<McReport> {
    run_experiment(exp)
}

/// Monte Carlo mean and standard error of `D̂²` under `model`.
pub fn mc_mean_d2(
    model: &ModelSpec,
    t: usize,
    n: usize,
    n_runs: usize,
    seed: u64,
    burn_in: usize,
) -> Result<(f64, f64)> {
    if n_runs < 2 {
        return Err(Error::invalid("need at least two runs for a standard error"));
    }
    model.validate()?;
    let root = GaussianSource::new(seed);
    let values: Vec<f64> = (0..n_runs as u64)
        .into_par_iter()
        .map(|r| {
            let x = model.simulate(t, &mut root.child(r), burn_in)?;
            Ok(summarize(&x, n)?.d2_hat)
        })
        .collect::<Result<_>>()?;
    let (mean, var) = mean_var(&values);
    Ok((mean, (var / n_runs as f64).sqrt()))
}

fn mean_var(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Outcome of the Riemann-sum versus integral variance comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceRatio {
    /// `Var(F̂₁) / Var(F̃₁)`.
    pub ratio: f64,
    /// 95% percentile bootstrap interval for the ratio.
    pub ci: (f64, f64),
    /// `T · Var(F̂₁)`.
    pub t_var_riemann: f64,
    /// `T · Var(F̃₁)`.
    pub t_var_integral: f64,
    /// Limit ratio `15/14` for any spectral density.
    pub target: f64,
    pub n_reps: usize,
}

const RATIO_CI_RESAMPLES: usize = 1000;

/// Compares the Monte Carlo variances of `F̂₁` (Riemann sum over Fourier
/// frequencies) and `F̃₁` (exact integral of the squared local periodogram)
/// on Gaussian white noise with `T = N·M`.
pub fn remark32_variance_check(n: usize, m: usize, n_reps: usize, seed: u64) -> Result<VarianceRatio> {
    if n_reps < 2 {
        return Err(Error::invalid("at least two replicates are needed to estimate a variance"));
    }
    if m == 0 {
        return Err(Error::invalid("block count M must be positive"));
    }
    let t = n * m;
    let scheme = BlockScheme::new(t, n)?;
    let root = GaussianSource::new(seed);
    let pairs: Vec<(f64, f64)> = (0..n_reps as u64)
        .into_par_iter()
        .map(|r| {
            let x = TimeSeries::new(root.child(r).normals(t))?;
            let pg = local_periodogram_matrix(&x, &scheme)?;
            Ok((f1_hat(&pg), integrated_squared_local_periodogram(&x, &scheme)?))
        })
        .collect::<Result<_>>()?;
    let var_ratio = |idx: &mut dyn Iterator<Item = usize>| {
        let (mut s1, mut s2, mut q1, mut q2, mut k) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for i in idx {
            let (a, b) = pairs[i];
            s1 += a;
            s2 += b;
            q1 += a * a;
            q2 += b * b;
            k += 1.0;
        }
        let v1 = (q1 - s1 * s1 / k) / (k - 1.0);
        let v2 = (q2 - s2 * s2 / k) / (k - 1.0);
        (v1, v2)
    };
    let (v1, v2) = {
        let a: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let b: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        (mean_var(&a).1, mean_var(&b).1)
    };
    let mut resampler = root.child(u64::MAX);
    let mut ratios: Vec<f64> = (0..RATIO_CI_RESAMPLES)
        .map(|_| {
            let draws: Vec<usize> = (0..n_reps).map(|_| resampler.uniform_below(n_reps)).collect();
            let (a, b) = var_ratio(&mut draws.into_iter());
            a / b
        })
        .collect();
    ratios.sort_by(f64::total_cmp);
    let lo = ratios[(0.025 * RATIO_CI_RESAMPLES as f64) as usize];
    let hi = ratios[(0.975 * RATIO_CI_RESAMPLES as f64) as usize - 1];
    Ok(VarianceRatio {
        ratio: v1 / v2,
        ci: (lo, hi),
        t_var_riemann: t as f64 * v1,
        t_var_integral: t as f64 * v2,
        target: 15.0 / 14.0,
        n_reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_experiment(method: TestMethod) -> Experiment {
        Experiment {
            models: vec![LabeledModel {
                label: "phi=0".into(),
                model: ModelSpec::builtin(BuiltinModel::NullAr1, 0.1, 0.0),
            }],
            scenarios: vec![Scenario::new("A1", 128, 16)],
            alpha_levels: vec![0.05, 0.10],
            n_runs: 1,
            method,
            bootstrap: Some(BootstrapSettings { b: 40, p_max: 2 }),
            seed: 3,
            burn_in: 256,
        }
    }

    #[test]
    fn table_labels() {
        let s = table_scenarios();
        assert_eq!(s.len(), 14);
        assert_eq!(table_scenario("C2").unwrap(), Scenario::new("C2", 512, 32));
        assert_eq!(table_scenario("D5").unwrap().m(), 128);
        for sc in s {
            assert_eq!(sc.m() * sc.n, sc.t);
        }
    }

    #[test]
    fn single_run_gives_binary_frequency() {
        for method in [TestMethod::Asymptotic, TestMethod::Bootstrap] {
            let exp = small_experiment(method);
            let rep = run_experiment(&exp).unwrap();
            assert_eq!(rep.experiment, exp);
            let c = &rep.cells[0];
            for f in &c.frequencies {
                assert!(*f == 0.0 || *f == 1.0);
            }
            assert_eq!(c.n_ok + c.n_failed, 1);
        }
    }

    #[test]
    fn validation_lists_all_problems() {
        let mut exp = small_experiment(TestMethod::Bootstrap);
        exp.scenarios = vec![];
        exp.alpha_levels = vec![1.5];
        match exp.validate() {
            Err(Error::InvalidArgument(msg)) => {
                assert!(msg.contains("empty scenario grid") && msg.contains("alpha 1.5"), "{msg}")
            }
            other => panic!("{other:?}"),
        }
        let mut exp = small_experiment(TestMethod::Asymptotic);
        exp.scenarios = vec![Scenario::new("bad", 100, 7)];
        assert!(exp.validate().is_err());
    }

    #[test]
    fn report_is_thread_count_independent() {
        let mut exp = small_experiment(TestMethod::Bootstrap);
        exp.n_runs = 6;
        let a = run_experiment(&exp).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| run_experiment(&exp).unwrap());
        assert_eq!(a.cells, b.cells);
    }

    #[test]
    fn csv_shapes() {
        let mut exp = small_experiment(TestMethod::Asymptotic);
        exp.scenarios = vec![Scenario::new("A1", 128, 16), Scenario::new("B1", 256, 32)];
        exp.n_runs = 4;
        let rep = run_experiment(&exp).unwrap();
        let table = rep.to_table_csv();
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "scenario,T,N,M,phi=0@0.05,phi=0@0.1");
        assert!(lines[1].starts_with("A1,128,16,8,"));
        let power = rep.to_power_csv();
        assert_eq!(power.lines().count(), 1 + 2 * 2);
    }

    #[test]
    fn std_errors_follow_frequencies() {
        let mut exp = small_experiment(TestMethod::Asymptotic);
        exp.n_runs = 50;
        let rep = run_experiment(&exp).unwrap();
        let c = &rep.cells[0];
        for (p, se) in c.frequencies.iter().zip(&c.std_errors) {
            assert!((0.0..=1.0).contains(p));
            assert!((se - (p * (1.0 - p) / c.n_ok as f64).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn model_specs_deserialize() {
        let v: ModelSpec = serde_json::from_str(
            r#"{"type":"builtin","name":"tv-ma-cos","d":0.2}"#,
        )
        .unwrap();
        assert_eq!(v.to_tv(), TvFarimaSpec::tv_ma_cos(0.2));
        let v: ModelSpec = serde_json::from_str(r#"{"type":"farima","d":0.1,"ar":[0.5]}"#).unwrap();
        assert_eq!(v, ModelSpec::Farima(FarimaSpec::ar1(0.1, 0.5)));
    }

    #[test]
    fn remark32_needs_two_replicates() {
        assert!(remark32_variance_check(16, 4, 1, 0).is_err());
        let r = remark32_variance_check(16, 4, 200, 0).unwrap();
        assert!(r.ratio > 0.0 && r.ci.0 <= r.ci.1);
    }

    #[test]
    fn zero_amplitude_alternative_is_null() {
        let tv = TvFarimaSpec {
            ar: vec![crate::farima::CoefFn::SinAr { amplitude: 0.0 }],
            ..TvFarimaSpec::tv_ar_sin(0.2)
        };
        assert!(tv.is_stationary());
        let a = ModelSpec::TvFarima(tv).simulate(256, &mut GaussianSource::new(1), 128).unwrap();
        let b = ModelSpec::builtin(BuiltinModel::NullAr1, 0.2, 0.0)
            .simulate(256, &mut GaussianSource::new(1), 128)
            .unwrap();
        assert_eq!(a, b);
    }
}
