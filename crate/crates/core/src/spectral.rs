//! Local and global periodograms on Fourier frequencies.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::series::{BlockScheme, TimeSeries};

/// Blocks up to this length use the direct O(N²) transform.
const DIRECT_DFT_MAX: usize = 64;

/// Squared DFT moduli `|Σ_s x_s e^{-2πiks/n}|²` of a length-`n` block.
pub(crate) enum DftKernel {
    Direct { n: usize, cos: Vec<f64>, sin: Vec<f64> },
    Fast { n: usize, fft: Arc<dyn Fft<f64>> },
}

impl DftKernel {
    pub(crate) fn new(n: usize) -> Self {
        if n <= DIRECT_DFT_MAX {
            let (sin, cos) = (0..n)
                .map(|m| (2.0 * PI * m as f64 / n as f64).sin_cos())
                .unzip();
            DftKernel::Direct { n, cos, sin }
        } else {
            let fft = FftPlanner::new().plan_fft_forward(n);
            DftKernel::Fast { n, fft }
        }
    }

    /// Writes `|DFT_k|²` for `k = 1..=out.len()` into `out`.
    pub(crate) fn power(&self, block: &[f64], out: &mut [f64]) {
        match self {
            DftKernel::Direct { n, cos, sin } => {
                debug_assert_eq!(block.len(), *n);
                for (idx, o) in out.iter_mut().enumerate() {
                    let k = idx + 1;
                    let (mut re, mut im) = (0.0, 0.0);
                    let mut m = 0usize;
                    for &x in block {
                        re += x * cos[m];
                        im -= x * sin[m];
                        m += k;
                        if m >= *n {
                            m -= *n;
                        }
                    }
                    *o = re * re + im * im;
                }
            }
            DftKernel::Fast { n, fft } => {
                debug_assert_eq!(block.len(), *n);
                let mut buf: Vec<Complex64> =
                    block.iter().map(|&x| Complex64::new(x, 0.0)).collect();
                fft.process(&mut buf);
                for (idx, o) in out.iter_mut().enumerate() {
                    *o = buf[idx + 1].norm_sqr();
                }
            }
        }
    }
}

/// `M × ⌊N/2⌋` matrix of local periodogram ordinates `I_N(u_j, λ_{k,N})`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodogramMatrix {
    scheme: BlockScheme,
    ordinates: Vec<f64>,
}

impl PeriodogramMatrix {
    /// Builds a matrix from raw row-major ordinates.
    pub fn from_ordinates(scheme: BlockScheme, ordinates: Vec<f64>) -> Result<Self> {
        if ordinates.len() != scheme.m() * scheme.k() {
            return Err(Error::invalid(format!(
                "expected {} ordinates for M={} and K={}, got {}",
                scheme.m() * scheme.k(),
                scheme.m(),
                scheme.k(),
                ordinates.len()
            )));
        }
        if let Some(v) = ordinates.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::invalid(format!(
                "periodogram ordinates must be finite and nonnegative, found {v}"
            )));
        }
        Ok(PeriodogramMatrix { scheme, ordinates })
    }

    pub fn scheme(&self) -> &BlockScheme {
        &self.scheme
    }

    pub fn m(&self) -> usize {
        self.scheme.m()
    }

    pub fn k(&self) -> usize {
        self.scheme.k()
    }

    /// Ordinates of block `j` (0-indexed), frequencies `k = 1..K`.
    pub fn row(&self, j: usize) -> &[f64] {
        let k = self.k();
        &self.ordinates[j * k..(j + 1) * k]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.ordinates.chunks_exact(self.k())
    }

    /// `I_N(u_{j+1}, λ_{k+1,N})` with 0-indexed `j`, `k`.
    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.ordinates[j * self.k() + k]
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.scheme.frequencies()
    }
}

fn check_scheme(series: &TimeSeries, scheme: &BlockScheme) -> Result<()> {
    if series.len() != scheme.t() + scheme.discarded() {
        return Err(Error::invalid(format!(
            "block scheme was built for {} observations but the series has {}",
            scheme.t() + scheme.discarded(),
            series.len()
        )));
    }
    Ok(())
}

/// Local periodogram of every block of `scheme`.
pub fn local_periodogram_matrix(
    series: &TimeSeries,
    scheme: &BlockScheme,
) -> Result<PeriodogramMatrix> {
    check_scheme(series, scheme)?;
    let n = scheme.n();
    let k = scheme.k();
    let kernel = DftKernel::new(n);
    let norm = 1.0 / (2.0 * PI * n as f64);
    let x = series.values();
    let mut ordinates = vec![0.0; scheme.m() * k];
    for (block, out) in x[..scheme.t()]
        .chunks_exact(n)
        .zip(ordinates.chunks_exact_mut(k))
    {
        kernel.power(block, out);
        out.iter_mut().for_each(|v| *v *= norm);
    }
    Ok(PeriodogramMatrix {
        scheme: scheme.clone(),
        ordinates,
    })
}

/// Ordinary periodogram on the positive Fourier frequencies of the full sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Periodogram {
    /// Sample size the frequencies refer to.
    pub t: usize,
    /// `λ_{k,T} = 2πk/T`, `k = 1..⌊T/2⌋`.
    pub frequencies: Vec<f64>,
    pub ordinates: Vec<f64>,
}

impl Periodogram {
    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }
}

/// `I_T(λ) = (1/2πT)|Σ_t X_t e^{-iλt}|²` at `λ_{k,T}` for `k = 1..⌊T/2⌋`.
pub fn full_periodogram(series: &TimeSeries) -> Result<Periodogram> {
    let t = series.len();
    if t < 4 {
        return Err(Error::invalid(format!(
            "periodogram needs at least 4 observations, got {t}"
        )));
    }
    let k = t / 2;
    let mut ordinates = vec![0.0; k];
    DftKernel::new(t).power(series.values(), &mut ordinates);
    let norm = 1.0 / (2.0 * PI * t as f64);
    ordinates.iter_mut().for_each(|v| *v *= norm);
    let frequencies = (1..=k).map(|j| 2.0 * PI * j as f64 / t as f64).collect();
    Ok(Periodogram {
        t,
        frequencies,
        ordinates,
    })
}

/// Block-averaged integral of the squared local periodogram,
/// `(1/(4πM)) Σ_j ∫_{-π}^{π} I_N(u_j, λ)² dλ`.
///
/// Uses `∫ I_N² dλ = (1/2π) Σ_{|h|<N} ĉ(h)²` with
/// `ĉ(h) = (1/N) Σ_s x_s x_{s+|h|}`, the Fourier coefficients of `I_N`.
pub fn integrated_squared_local_periodogram(
    series: &TimeSeries,
    scheme: &BlockScheme,
) -> Result<f64> {
    check_scheme(series, scheme)?;
    let n = scheme.n();
    let x = &series.values()[..scheme.t()];
    let mut total = 0.0;
    for block in x.chunks_exact(n) {
        let mut sum_sq = 0.0;
        for h in 0..n {
            let c: f64 = block[..n - h]
                .iter()
                .zip(&block[h..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / n as f64;
            sum_sq += if h == 0 { c * c } else { 2.0 * c * c };
        }
        total += sum_sq / (2.0 * PI);
    }
    Ok(total / (4.0 * PI * scheme.m() as f64))
}
