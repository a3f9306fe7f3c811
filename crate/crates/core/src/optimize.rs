//! Derivative-free Nelder–Mead simplex minimizer.
//!
//! Infeasible points are signalled by returning `+∞` from the objective.

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    pub max_iterations: usize,
    /// Stop once every vertex lies within this sup-norm distance of the best one.
    pub diameter_tol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            max_iterations: 2000,
            diameter_tol: 1e-7,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn diameter(simplex: &[Vec<f64>], best: usize) -> f64 {
    simplex
        .iter()
        .map(|v| {
            v.iter()
                .zip(&simplex[best])
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

fn sort_simplex(simplex: &mut Vec<Vec<f64>>, values: &mut Vec<f64>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    // total_cmp keeps the ordering deterministic with infinite values
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    *simplex = order.iter().map(|&i| simplex[i].clone()).collect();
    *values = order.iter().map(|&i| values[i]).collect();
}

/// Minimizes `f` from `x0` with an initial simplex `x0 + steps[i]·e_i`.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], steps: &[f64], opts: NelderMeadOptions) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    assert_eq!(steps.len(), n, "one initial step per coordinate");
    let eval = |f: &mut F, x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    if n == 0 {
        let value = eval(&mut f, x0);
        return Minimum { x: vec![], value, iterations: 0, converged: true };
    }

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += steps[i];
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(&mut f, v)).collect();
    sort_simplex(&mut simplex, &mut values);

    let mut iterations = 0;
    let mut converged = false;
    let mut centroid = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut trial2 = vec![0.0; n];
    while iterations < opts.max_iterations {
        if values[0].is_finite() && diameter(&simplex, 0) < opts.diameter_tol {
            converged = true;
            break;
        }
        iterations += 1;

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let worst = &simplex[n];
        for i in 0..n {
            trial[i] = centroid[i] + REFLECT * (centroid[i] - worst[i]);
        }
        let f_r = eval(&mut f, &trial);

        if f_r < values[0] {
            for i in 0..n {
                trial2[i] = centroid[i] + EXPAND * (trial[i] - centroid[i]);
            }
            let f_e = eval(&mut f, &trial2);
            if f_e < f_r {
                simplex[n].copy_from_slice(&trial2);
                values[n] = f_e;
            } else {
                simplex[n].copy_from_slice(&trial);
                values[n] = f_r;
            }
        } else if f_r < values[n - 1] {
            simplex[n].copy_from_slice(&trial);
            values[n] = f_r;
        } else {
            let outside = f_r < values[n];
            for i in 0..n {
                trial2[i] = if outside {
                    centroid[i] + CONTRACT * (trial[i] - centroid[i])
                } else {
                    centroid[i] + CONTRACT * (simplex[n][i] - centroid[i])
                };
            }
            let f_c = eval(&mut f, &trial2);
            let accept = if outside { f_c <= f_r } else { f_c < values[n] };
            if accept {
                simplex[n].copy_from_slice(&trial2);
                values[n] = f_c;
            } else {
                let best = simplex[0].clone();
                for k in 1..=n {
                    for i in 0..n {
                        simplex[k][i] = best[i] + SHRINK * (simplex[k][i] - best[i]);
                    }
                    values[k] = eval(&mut f, &simplex[k]);
                }
            }
        }
        sort_simplex(&mut simplex, &mut values);
    }
    if !converged && values[0].is_finite() && diameter(&simplex, 0) < opts.diameter_tol {
        converged = true;
    }
    Minimum {
        x: simplex[0].clone(),
        value: values[0],
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let opts = NelderMeadOptions { max_iterations: 5000, diameter_tol: 1e-10 };
        let m = nelder_mead(f, &[-1.2, 1.0], &[0.1, 0.1], opts);
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-6 && (m.x[1] - 1.0).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn respects_infinite_barrier() {
        // minimum of (x-2)² constrained to x <= 1
        let f = |x: &[f64]| if x[0] > 1.0 { f64::INFINITY } else { (x[0] - 2.0).powi(2) };
        let m = nelder_mead(f, &[0.0], &[0.3], NelderMeadOptions::default());
        assert!(m.x[0] <= 1.0 && m.x[0] > 1.0 - 1e-6, "{m:?}");
    }

    #[test]
    fn quadratic_in_five_dimensions() {
        let f = |x: &[f64]| x.iter().enumerate().map(|(i, v)| (i + 1) as f64 * (v - 0.1 * i as f64).powi(2)).sum();
        let m = nelder_mead(f, &[0.0; 5], &[0.2; 5], NelderMeadOptions::default());
        assert!(m.converged);
        for (i, v) in m.x.iter().enumerate() {
            assert!((v - 0.1 * i as f64).abs() < 1e-6);
        }
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let f = |x: &[f64]| (x[0] - 3.0).powi(2) + x[1].powi(2);
        let opts = NelderMeadOptions { max_iterations: 3, diameter_tol: 1e-12 };
        let m = nelder_mead(f, &[0.0, 0.0], &[0.1, 0.1], opts);
        assert!(!m.converged);
        assert_eq!(m.iterations, 3);
    }
}
