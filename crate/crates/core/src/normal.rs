//! Standard normal CDF and quantile.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// `erf(z)` for `0 <= z` via the all-positive series
/// `erf(z) = 2/√π · e^{-z²} · Σ 2ⁿ z^{2n+1} / (1·3···(2n+1))`.
fn erf_series(z: f64) -> f64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= 2.0 * z2 / (2.0 * n + 1.0);
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
    }
    FRAC_2_SQRT_PI * (-z2).exp() * sum
}

/// `erfc(z)` for `z >= 2` from its continued fraction (modified Lentz).
fn erfc_cf(z: f64) -> f64 {
    // erfc(z) = e^{-z²}/√π · 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    let tiny = 1e-300;
    let mut f = z;
    let mut c = z;
    let mut d = 0.0;
    for k in 1..500 {
        let a = k as f64 / 2.0;
        d = z + a * d;
        d = if d.abs() < tiny { tiny } else { d };
        c = z + a / c;
        c = if c.abs() < tiny { tiny } else { c };
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-z * z).exp() / (PI.sqrt() * f)
}

/// Upper tail `P(Z > x)` for `x >= 0`.
fn upper_tail(x: f64) -> f64 {
    let z = x / SQRT_2;
    if z < 2.0 {
        0.5 * (1.0 - erf_series(z))
    } else {
        0.5 * erfc_cf(z)
    }
}

/// Standard normal distribution function `Φ(x)`.
pub fn normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x >= 0.0 {
        1.0 - upper_tail(x)
    } else {
        upper_tail(-x)
    }
}

fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

// Rational approximation of P. J. Acklam, relative error below 1.15e-9.
const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];

fn acklam(q: f64) -> f64 {
    const P_LOW: f64 = 0.02425;
    if q < P_LOW {
        let r = (-2.0 * q.ln()).sqrt();
        (((((C[0] * r + C[1]) * r + C[2]) * r + C[3]) * r + C[4]) * r + C[5])
            / ((((D[0] * r + D[1]) * r + D[2]) * r + D[3]) * r + 1.0)
    } else {
        let s = q - 0.5;
        let r = s * s;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * s
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

/// Lower-half quantile (`q <= 0.5`), refined by one Newton step.
fn lower_quantile(q: f64) -> f64 {
    let x = acklam(q);
    let pdf = normal_pdf(x);
    if pdf == 0.0 {
        return x;
    }
    x - (normal_cdf(x) - q) / pdf
}

/// The `q`-quantile `u_q` of the standard normal distribution.
pub fn normal_quantile(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::invalid(format!("quantile level must lie in (0, 1), got {q}")));
    }
    if q <= 0.5 {
        Ok(lower_quantile(q))
    } else {
        Ok(-lower_quantile(1.0 - q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_is_zero() {
        assert_eq!(normal_quantile(0.5).unwrap(), 0.0);
    }

    #[test]
    fn rejects_out_of_range() {
        for q in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(normal_quantile(q), Err(Error::InvalidArgument(_))));
        }
    }

    #[test]
    fn cdf_inverts_quantile() {
        for i in 1..1000 {
            let q = i as f64 / 1000.0;
            let x = normal_quantile(q).unwrap();
            assert!((normal_cdf(x) - q).abs() <= 1e-10, "q={q}");
        }
        for q in [1e-12, 1e-8, 1e-5, 0.01, 0.024, 0.025, 0.976, 0.99999] {
            let x = normal_quantile(q).unwrap();
            assert!((normal_cdf(x) - q).abs() <= 1e-10, "q={q}");
        }
    }

    #[test]
    fn symmetric() {
        for i in 1..500 {
            let q = i as f64 / 1000.0 + 1e-4;
            let a = normal_quantile(q).unwrap();
            let b = normal_quantile(1.0 - q).unwrap();
            assert!((a + b).abs() <= 1e-12, "q={q}: {a} vs {b}");
        }
    }

    #[test]
    fn cdf_continuous_at_branch_switch() {
        let x = 2.0 * SQRT_2;
        let h = 1e-9;
        let lo = upper_tail(x - h);
        let hi = upper_tail(x + h);
        let jump = (lo - hi) - 2.0 * h * normal_pdf(x);
        assert!(jump.abs() < 1e-15, "{jump}");
    }
}
