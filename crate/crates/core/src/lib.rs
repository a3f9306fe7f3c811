//! Measuring and testing deviations from stationarity in locally stationary
//! long-memory time series.
//!
//! The central quantity is the L2 distance between the time-varying spectral
//! density and its best stationary approximation,
//!
//! ```text
//! D² = ∫₀¹ ∫_{-π}^{π} f(u, λ)² dλ du − (1/2π) ∫_{-π}^{π} (∫₀¹ f(u, λ) du)² dλ,
//! ```
//!
//! estimated from local periodograms on `M` non-overlapping blocks of length
//! `N`. Two tests of `H₀: D² = 0` are provided: an asymptotic normal test and
//! a FARI(∞) bootstrap test that remains valid under long memory.
//!
//! ```
//! use stationarity::{asymptotic_test, GaussianSource, TimeSeries};
//!
//! let x = TimeSeries::new(GaussianSource::new(1).normals(512)).unwrap();
//! let res = asymptotic_test(&x, 32, 0.05).unwrap();
//! assert!(res.summary.statistic.is_finite());
//! ```

pub mod bootstrap;
pub mod error;
pub mod estimators;
pub mod farima;
pub mod fractional;
pub mod harness;
pub mod normal;
pub mod optimize;
pub mod quadrature;
pub mod rng;
pub mod series;
pub mod spectral;
pub mod whittle;

pub use bootstrap::{bootstrap_distribution, bootstrap_test, order_statistic_index, BootstrapConfig};
pub use error::{Error, Result};
pub use estimators::{asymptotic_test, summarize, Diagnostics, StatSummary, TestMethod, TestResult};
pub use farima::{
    simulate_farima, simulate_tvfarima, theoretical_distance, tv_spectral_density, CoefFn, FarimaSpec,
    TvFarimaSpec,
};
pub use fractional::{frac_diff, frac_integrate};
pub use harness::{run_experiment, run_power_curve, Experiment, McReport, ModelSpec, Scenario};
pub use normal::{normal_cdf, normal_quantile};
pub use rng::GaussianSource;
pub use series::{BlockScheme, TimeSeries};
pub use spectral::{full_periodogram, local_periodogram_matrix, Periodogram, PeriodogramMatrix};
pub use whittle::{fit_whittle, select_order_aic, WhittleFit};
