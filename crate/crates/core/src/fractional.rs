//! Fractional differencing `(1 − B)^d` and integration `(1 − B)^{-d}`,
//! truncated at the start of the sample.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Series longer than this are convolved through the FFT.
const DIRECT_CONVOLUTION_MAX: usize = 1024;

/// Binomial coefficients of `(1 − B)^d`: `π_0 = 1`, `π_j = π_{j−1}(j − 1 − d)/j`.
pub fn frac_diff_coeffs(d: f64, n: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(n);
    if n == 0 {
        return c;
    }
    c.push(1.0);
    for j in 1..n {
        let prev = c[j - 1];
        c.push(prev * (j as f64 - 1.0 - d) / j as f64);
    }
    c
}

/// Coefficients of `(1 − B)^{-d}`: `ψ_0 = 1`, `ψ_j = ψ_{j−1}(j − 1 + d)/j`.
pub fn frac_integrate_coeffs(d: f64, n: usize) -> Vec<f64> {
    frac_diff_coeffs(-d, n)
}

/// `y_t = Σ_{j=0}^{t} c_j x_{t−j}` for `t = 0..x.len()`.
pub(crate) fn truncated_convolution(coeffs: &[f64], x: &[f64]) -> Vec<f64> {
    let n = x.len();
    debug_assert!(coeffs.len() >= n);
    if n <= DIRECT_CONVOLUTION_MAX {
        return (0..n)
            .map(|t| (0..=t).map(|j| coeffs[j] * x[t - j]).sum())
            .collect();
    }
    let size = (2 * n).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    let mut a: Vec<Complex64> = (0..size)
        .map(|i| Complex64::new(if i < n { coeffs[i] } else { 0.0 }, 0.0))
        .collect();
    let mut b: Vec<Complex64> = (0..size)
        .map(|i| Complex64::new(if i < n { x[i] } else { 0.0 }, 0.0))
        .collect();
    fwd.process(&mut a);
    fwd.process(&mut b);
    for (u, v) in a.iter_mut().zip(&b) {
        *u *= v;
    }
    inv.process(&mut a);
    let scale = 1.0 / size as f64;
    a[..n].iter().map(|z| z.re * scale).collect()
}

pub(crate) fn frac_diff_values(x: &[f64], d: f64) -> Vec<f64> {
    if d == 0.0 {
        return x.to_vec();
    }
    truncated_convolution(&frac_diff_coeffs(d, x.len()), x)
}

pub(crate) fn frac_integrate_values(x: &[f64], d: f64) -> Vec<f64> {
    if d == 0.0 {
        return x.to_vec();
    }
    truncated_convolution(&frac_integrate_coeffs(d, x.len()), x)
}

fn check_order(d: f64) -> Result<()> {
    if !(d > -1.0 && d < 1.0) && d != 1.0 {
        return Err(Error::invalid(format!(
            "fractional order must lie in (-1, 1], got {d}"
        )));
    }
    Ok(())
}

/// `Y_t = Σ_{j<t} π_j(d) X_{t−j}` (zero pre-sample).
pub fn frac_diff(series: &TimeSeries, d: f64) -> Result<TimeSeries> {
    check_order(d)?;
    TimeSeries::new(frac_diff_values(series.values(), d))
}

/// `X_t = Σ_{j<t} ψ_j(d) Y_{t−j}` (zero pre-sample).
pub fn frac_integrate(series: &TimeSeries, d: f64) -> Result<TimeSeries> {
    check_order(d)?;
    TimeSeries::new(frac_integrate_values(series.values(), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::GaussianSource;

    #[test]
    fn identity_and_first_difference() {
        assert_eq!(frac_diff_coeffs(0.0, 4), vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(frac_diff_coeffs(1.0, 4), vec![1.0, -1.0, 0.0, 0.0]);
        assert_eq!(frac_integrate_coeffs(0.0, 3), vec![1.0, 0.0, 0.0]);
        let s = TimeSeries::new(vec![1.0, 4.0, 9.0, 16.0]).unwrap();
        assert_eq!(frac_diff(&s, 1.0).unwrap().values(), &[1.0, 3.0, 5.0, 7.0]);
    }

    #[test]
    fn small_coefficients() {
        let c = frac_diff_coeffs(0.5, 3);
        assert!((c[1] + 0.5).abs() < 1e-15 && (c[2] + 0.125).abs() < 1e-15);
        let c = frac_integrate_coeffs(0.2, 3);
        assert!((c[1] - 0.2).abs() < 1e-15 && (c[2] - 0.12).abs() < 1e-15);
    }

    #[test]
    fn coefficient_sequences_are_inverse() {
        for d in [0.1, 0.2, 0.45, -0.3] {
            let n = 200;
            let a = frac_diff_coeffs(d, n);
            let b = frac_integrate_coeffs(d, n);
            for t in 0..n {
                let v: f64 = (0..=t).map(|j| a[j] * b[t - j]).sum();
                let want = if t == 0 { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-12, "d={d} t={t}");
            }
        }
    }

    #[test]
    fn impulse_response() {
        let mut v = vec![0.0; 50];
        v[0] = 2.0;
        let s = TimeSeries::new(v).unwrap();
        let y = frac_diff(&s, 0.3).unwrap();
        let c = frac_diff_coeffs(0.3, 50);
        for (a, b) in y.values().iter().zip(&c) {
            assert!((a - 2.0 * b).abs() < 1e-15);
        }
        let y = frac_integrate(&s, 0.3).unwrap();
        let c = frac_integrate_coeffs(0.3, 50);
        for (a, b) in y.values().iter().zip(&c) {
            assert!((a - 2.0 * b).abs() < 1e-15);
        }
    }

    #[test]
    fn round_trip_direct_and_fft() {
        for n in [300, 5000] {
            let x = GaussianSource::new(n as u64).normals(n);
            let s = TimeSeries::new(x.clone()).unwrap();
            for d in [0.1, 0.25, 0.45] {
                let back = frac_diff(&frac_integrate(&s, d).unwrap(), d).unwrap();
                for (a, b) in back.values().iter().zip(&x) {
                    assert!((a - b).abs() < 1e-10, "n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn fft_path_matches_direct() {
        let n = 2000;
        let x = GaussianSource::new(77).normals(n);
        let c = frac_integrate_coeffs(0.3, n);
        let fast = truncated_convolution(&c, &x);
        for t in [0, 1, 999, 1999] {
            let direct: f64 = (0..=t).map(|j| c[j] * x[t - j]).sum();
            assert!((fast[t] - direct).abs() < 1e-10);
        }
    }
}
