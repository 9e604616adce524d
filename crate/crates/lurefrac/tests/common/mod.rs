//! Shared test oracles, independent of the library's implementation
//! paths: a Mittag-Leffler series built on its own Spouge gamma, and a
//! classical RK4 reference integrator.

#![allow(dead_code)]

/// Spouge's gamma approximation (a = 12), valid for x >= 1. Distinct
/// from the library's Lanczos implementation on purpose.
pub fn spouge_gamma(x: f64) -> f64 {
    const A: usize = 12;
    let z = x - 1.0;
    let mut acc = (2.0 * std::f64::consts::PI).sqrt();
    let mut fact = 1.0_f64;
    for k in 1..A {
        let kf = k as f64;
        let c = ((A as f64 - kf).powf(kf - 0.5) * (A as f64 - kf).exp()) / fact;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc += sign * c / (z + kf);
        fact *= kf;
    }
    (z + A as f64).powf(z + 0.5) * (-(z + A as f64)).exp() * acc
}

/// One-parameter Mittag-Leffler function E_alpha(z) by direct series
/// summation; adequate for |z| up to ~10 in f64.
pub fn mittag_leffler(alpha: f64, z: f64) -> f64 {
    let mut sum = 0.0;
    let mut z_pow = 1.0;
    let mut tiny_run = 0;
    for k in 0..400 {
        let term = z_pow / spouge_gamma(alpha * k as f64 + 1.0);
        sum += term;
        z_pow *= z;
        if term.abs() < 1e-16 * sum.abs().max(1e-30) {
            tiny_run += 1;
            if tiny_run > 3 {
                break;
            }
        } else {
            tiny_run = 0;
        }
    }
    sum
}

/// Classical fixed-step fourth-order Runge-Kutta integrator.
pub fn rk4<F>(mut f: F, x0: &[f64], h: f64, t_end: f64) -> (Vec<f64>, Vec<Vec<f64>>)
where
    F: FnMut(f64, &[f64]) -> Vec<f64>,
{
    let steps = (t_end / h).round() as usize;
    let dim = x0.len();
    let mut t_grid = Vec::with_capacity(steps + 1);
    let mut xs = Vec::with_capacity(steps + 1);
    t_grid.push(0.0);
    xs.push(x0.to_vec());
    let mut x = x0.to_vec();
    for n in 0..steps {
        let t = n as f64 * h;
        let k1 = f(t, &x);
        let mut xt = vec![0.0; dim];
        for i in 0..dim {
            xt[i] = x[i] + 0.5 * h * k1[i];
        }
        let k2 = f(t + 0.5 * h, &xt);
        for i in 0..dim {
            xt[i] = x[i] + 0.5 * h * k2[i];
        }
        let k3 = f(t + 0.5 * h, &xt);
        for i in 0..dim {
            xt[i] = x[i] + h * k3[i];
        }
        let k4 = f(t + h, &xt);
        for i in 0..dim {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t_grid.push((n + 1) as f64 * h);
        xs.push(x.clone());
    }
    (t_grid, xs)
}

#[cfg(test)]
mod self_checks {
    use super::*;

    #[test]
    fn spouge_matches_known_values() {
        assert!((spouge_gamma(1.0) - 1.0).abs() < 1e-10);
        assert!((spouge_gamma(5.0) - 24.0).abs() < 1e-8);
        assert!((spouge_gamma(1.5) - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn ml_degenerates_to_exponential() {
        for &t in &[0.1, 1.0, 3.0, 5.0] {
            assert!((mittag_leffler(1.0, -t) - (-t).exp()).abs() < 1e-10);
        }
    }
}
