use proptest::prelude::*;
use stationarity::bootstrap::order_statistic_index;
use stationarity::estimators::{f1_hat, f2_hat};
use stationarity::{
    frac_diff, frac_integrate, local_periodogram_matrix, normal_quantile, summarize, BlockScheme,
    GaussianSource, TimeSeries,
};

fn series(seed: u64, len: usize) -> TimeSeries {
    TimeSeries::new(GaussianSource::new(seed).normals(len)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn frac_ops_invert(seed in any::<u64>(), len in 2usize..1500, d in 0.0f64..0.49) {
        let x = series(seed, len);
        let back = frac_integrate(&frac_diff(&x, d).unwrap(), d).unwrap();
        for (a, b) in back.values().iter().zip(x.values()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn statistic_is_scale_free(seed in any::<u64>(), log_c in -6.0f64..6.0, half_n in 2usize..40) {
        let n = 2 * half_n;
        let x = series(seed, 4 * n + 3);
        let base = summarize(&x, n).unwrap().statistic;
        let scaled = summarize(&x.scaled(10f64.powf(log_c)).unwrap(), n).unwrap().statistic;
        prop_assert!((base - scaled).abs() <= 1e-8 * base.abs().max(1.0));
    }

    #[test]
    fn single_block_sums_agree(seed in any::<u64>(), half_n in 2usize..100) {
        let n = 2 * half_n;
        let x = series(seed, n);
        let pg = local_periodogram_matrix(&x, &BlockScheme::new(n, n).unwrap()).unwrap();
        prop_assert_eq!(f1_hat(&pg), f2_hat(&pg));
    }

    #[test]
    fn block_scheme_covers_prefix(t in 4usize..100_000, half_n in 2usize..500) {
        let n = 2 * half_n;
        prop_assume!(n <= t);
        let s = BlockScheme::new(t, n).unwrap();
        prop_assert_eq!(s.t() + s.discarded(), t);
        prop_assert!(s.discarded() < n);
        prop_assert_eq!(s.m() * s.n(), s.t());
        let u = s.midpoints();
        prop_assert!(u.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(u[0] > 0.0 && *u.last().unwrap() < 1.0);
    }

    #[test]
    fn order_statistic_in_range(b in 1usize..5000, alpha in 0.001f64..0.999) {
        let idx = order_statistic_index(alpha, b);
        prop_assert!(idx <= b);
        prop_assert!(idx as f64 <= (1.0 - alpha) * b as f64 + 1e-6);
    }

    #[test]
    fn quantile_is_monotone_and_odd(q in 1e-12f64..0.5, dq in 1e-9f64..0.4) {
        let a = normal_quantile(q).unwrap();
        let b = normal_quantile((q + dq).min(0.5)).unwrap();
        prop_assert!(a <= b);
        let upper = 1.0 - q;
        let lower = normal_quantile(1.0 - upper).unwrap();
        prop_assert!((normal_quantile(upper).unwrap() + lower).abs() <= 1e-9 * lower.abs().max(1.0));
    }
}
