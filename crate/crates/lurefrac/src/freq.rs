//! Frequency sweeps of the Nyquist locus, refined extremum search, and
//! winding-number computation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tf::CommensurateTF;

/// Sweep and certification configuration.
///
/// Fractional loci have slow algebraic tails, so the default grid is far
/// wider than integer-order practice: 1e-8 to 1e8 rad/s at 40 points per
/// decade. `epsilon_margin` is the numeric margin against which the
/// criteria test their strict frequency-domain inequalities.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points_per_decade: usize,
    /// Golden-section refinement tolerance, in log10(omega) units.
    pub refine_tol: f64,
    pub epsilon_margin: f64,
}

impl SweepConfig {
    pub fn new(
        omega_min: f64,
        omega_max: f64,
        points_per_decade: usize,
        refine_tol: f64,
        epsilon_margin: f64,
    ) -> Result<Self> {
        if !(omega_min > 0.0 && omega_min < omega_max) {
            return Err(Error::InvalidInput(format!(
                "frequency range [{omega_min}, {omega_max}] must satisfy 0 < min < max"
            )));
        }
        if points_per_decade < 4 {
            return Err(Error::InvalidInput(
                "points_per_decade must be at least 4".into(),
            ));
        }
        if refine_tol <= 0.0 || epsilon_margin < 0.0 {
            return Err(Error::InvalidInput(
                "refine_tol must be positive and epsilon_margin nonnegative".into(),
            ));
        }
        Ok(Self {
            omega_min,
            omega_max,
            points_per_decade,
            refine_tol,
            epsilon_margin,
        })
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            omega_min: 1e-8,
            omega_max: 1e8,
            points_per_decade: 40,
            refine_tol: 1e-10,
            epsilon_margin: 1e-9,
        }
    }
}

/// One point of the locus, ordered by omega within a sweep.
#[derive(Debug, Clone, Copy)]
pub struct FreqSample {
    pub omega: f64,
    pub value: Complex64,
}

/// Result of a sweep: the sampled locus plus any frequencies skipped
/// because the transfer function had a pole there.
#[derive(Debug, Clone)]
pub struct Sweep {
    pub samples: Vec<FreqSample>,
    pub skipped_poles: Vec<f64>,
}

/// Log-spaced grid over [omega_min, omega_max].
fn grid(cfg: &SweepConfig) -> Vec<f64> {
    let lo = cfg.omega_min.log10();
    let hi = cfg.omega_max.log10();
    let n = ((hi - lo) * cfg.points_per_decade as f64).ceil() as usize + 1;
    (0..n)
        .map(|k| 10f64.powf(lo + (hi - lo) * k as f64 / (n - 1) as f64))
        .collect()
}

/// Samples the locus on the log grid, prepending the omega = 0 dc point.
pub fn sweep(g: &CommensurateTF, cfg: &SweepConfig) -> Sweep {
    let mut samples = Vec::new();
    let mut skipped_poles = Vec::new();
    for omega in std::iter::once(0.0).chain(grid(cfg)) {
        match g.freq_value(omega) {
            Some(value) => samples.push(FreqSample { omega, value }),
            None => skipped_poles.push(omega),
        }
    }
    Sweep {
        samples,
        skipped_poles,
    }
}

/// Which end of the real part to search for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

/// Golden-section minimization of `f(10^x)` on [a, b] (log-omega units).
/// At-pole samples inside the bracket are treated as +inf.
fn golden_min(f: &dyn Fn(f64) -> Option<f64>, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_8;
    let eval = |x: f64| f(10f64.powf(x)).unwrap_or(f64::INFINITY);
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = eval(d);
        }
    }
    let x = 0.5 * (a + b);
    (eval(x), 10f64.powf(x))
}

/// Grid scan plus golden-section refinement of `f` over the sweep range.
/// Returns the minimum value and the frequency attaining it. The omega =
/// 0 point is included as a candidate when `include_dc` is set; callers
/// fold in analytic high-frequency limits themselves.
pub(crate) fn scan_min(
    f: &dyn Fn(f64) -> Option<f64>,
    cfg: &SweepConfig,
    include_dc: bool,
) -> Result<(f64, f64)> {
    let xs = grid(cfg);
    let mut best: Option<(f64, f64)> = None;
    let mut consider = |v: f64, w: f64| {
        if best.is_none_or(|(bv, _)| v < bv) {
            best = Some((v, w));
        }
    };

    if include_dc {
        if let Some(v) = f(0.0) {
            consider(v, 0.0);
        }
    }
    let values: Vec<Option<f64>> = xs.iter().map(|&w| f(w)).collect();
    for (i, (&w, v)) in xs.iter().zip(&values).enumerate() {
        let Some(v) = *v else { continue };
        consider(v, w);
        // Interior local minimum: refine inside the adjacent brackets.
        let left = if i > 0 { values[i - 1] } else { None };
        let right = if i + 1 < values.len() {
            values[i + 1]
        } else {
            None
        };
        let is_local_min = match (left, right) {
            (Some(l), Some(r)) => v <= l && v <= r,
            (None, Some(r)) => v <= r,
            (Some(l), None) => v <= l,
            (None, None) => true,
        };
        if is_local_min {
            let a = if i > 0 { xs[i - 1] } else { xs[i] };
            let b = if i + 1 < xs.len() { xs[i + 1] } else { xs[i] };
            if a < b {
                let (rv, rw) = golden_min(f, a.log10(), b.log10(), cfg.refine_tol);
                if rv.is_finite() {
                    consider(rv, rw);
                }
            }
        }
    }
    best.ok_or_else(|| Error::InvalidInput("no finite samples in sweep range".into()))
}

/// Refined extremum of Re{G(j omega)} over the sweep range, including
/// the dc point and the analytic high-frequency limit as candidates.
///
/// Requires a BIBO-stable plant: extrema across an on-axis pole are
/// meaningless for the criteria built on top of this search.
pub fn extremum_re(g: &CommensurateTF, which: Extremum, cfg: &SweepConfig) -> Result<(f64, f64)> {
    let report = g.stability_report()?;
    if !report.bibo {
        return Err(Error::Unstable(format!(
            "{} pole(s) violate the argument condition",
            report.n_p
        )));
    }
    let sign = match which {
        Extremum::Min => 1.0,
        Extremum::Max => -1.0,
    };
    let f = |omega: f64| g.freq_value(omega).map(|v| sign * v.re);
    let (mut best, mut at) = scan_min(&f, cfg, true)?;
    let hf = sign * g.hf_limit();
    if hf < best {
        best = hf;
        at = f64::INFINITY;
    }
    Ok((sign * best, at))
}

/// Winding number of a closed polygonal curve about `point`, positive
/// counterclockwise. Successive phase increments must stay below pi.
pub fn polygon_winding(points: &[Complex64], point: Complex64) -> Result<i32> {
    if points.len() < 3 {
        return Err(Error::InvalidInput(
            "winding needs at least three samples".into(),
        ));
    }
    let on_tol = 1e-9 * (1.0 + point.norm());
    let mut total = 0.0;
    let mut prev = points[points.len() - 1] - point;
    if prev.norm() <= on_tol {
        return Err(Error::PointOnCurve {
            distance: prev.norm(),
        });
    }
    for (k, &p) in points.iter().enumerate() {
        let cur = p - point;
        if cur.norm() <= on_tol {
            return Err(Error::PointOnCurve {
                distance: cur.norm(),
            });
        }
        let inc = (cur / prev).arg();
        if inc.abs() >= std::f64::consts::PI * 0.999 {
            return Err(Error::RefineNeeded { omega: k as f64 });
        }
        total += inc;
        prev = cur;
    }
    Ok((total / (2.0 * std::f64::consts::PI)).round() as i32)
}

/// Winding number of the Nyquist locus about `point`. The positive-
/// frequency samples are completed by conjugate symmetry for omega < 0
/// and closed through the high-frequency limit; the result is the
/// counterclockwise winding count of that closed curve.
pub fn winding_number(samples: &[FreqSample], point: Complex64) -> Result<i32> {
    if samples.len() < 3 {
        return Err(Error::InvalidInput(
            "winding needs at least three samples".into(),
        ));
    }
    let mut closed: Vec<Complex64> = samples.iter().map(|s| s.value).collect();
    // Mirror branch, high frequency back toward dc; skip real-axis
    // samples whose mirror would duplicate the forward point.
    for s in samples.iter().rev() {
        if s.value.im != 0.0 {
            closed.push(s.value.conj());
        }
    }
    polygon_winding(&closed, point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RealPoly;
    use approx::assert_abs_diff_eq;

    fn first_order_lag() -> CommensurateTF {
        CommensurateTF::new(RealPoly::constant(1.0), RealPoly::new(vec![1.0, 1.0]), 1.0).unwrap()
    }

    fn three_pole(alpha: f64) -> CommensurateTF {
        CommensurateTF::new(
            RealPoly::constant(6.0),
            RealPoly::new(vec![6.0, 11.0, 6.0, 1.0]),
            alpha,
        )
        .unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(SweepConfig::new(1.0, 1.0, 40, 1e-10, 1e-9).is_err());
        assert!(SweepConfig::new(0.0, 1.0, 40, 1e-10, 1e-9).is_err());
        assert!(SweepConfig::new(1e-2, 1e2, 3, 1e-10, 1e-9).is_err());
        assert!(SweepConfig::new(1e-2, 1e2, 40, 0.0, 1e-9).is_err());
        assert!(SweepConfig::new(1e-2, 1e2, 40, 1e-10, -1.0).is_err());
    }

    #[test]
    fn lag_locus_shape() {
        let cfg = SweepConfig::default();
        let sw = sweep(&first_order_lag(), &cfg);
        assert!(sw.skipped_poles.is_empty());
        assert_eq!(sw.samples[0].omega, 0.0);
        for s in &sw.samples {
            assert!(s.value.re > 0.0 && s.value.re <= 1.0);
            assert!(s.value.im <= 0.0);
        }
    }

    #[test]
    fn three_pole_locus_endpoints() {
        let cfg = SweepConfig::default();
        let sw = sweep(&three_pole(1.0), &cfg);
        // Starts at the dc gain 1, decays toward 0.
        assert_abs_diff_eq!(sw.samples[0].value.re, 1.0, epsilon = 1e-12);
        let last = sw.samples.last().unwrap();
        assert!(last.value.norm() < 1e-6);
    }

    #[test]
    fn extremum_matches_sector_values() {
        let cfg = SweepConfig::default();
        let (min_int, _) = extremum_re(&three_pole(1.0), Extremum::Min, &cfg).unwrap();
        assert_abs_diff_eq!(min_int, -0.2147, epsilon = 1e-3);

        let (min_frac, _) = extremum_re(&three_pole(0.7), Extremum::Min, &cfg).unwrap();
        assert_abs_diff_eq!(min_frac, -0.03745, epsilon = 5e-4);
    }

    #[test]
    fn lag_min_is_high_frequency_zero() {
        let cfg = SweepConfig::default();
        let (min, at) = extremum_re(&first_order_lag(), Extremum::Min, &cfg).unwrap();
        assert_abs_diff_eq!(min, 0.0, epsilon = 1e-12);
        assert!(at.is_infinite());
        let (max, at_max) = extremum_re(&first_order_lag(), Extremum::Max, &cfg).unwrap();
        assert_abs_diff_eq!(max, 1.0, epsilon = 1e-12);
        assert_eq!(at_max, 0.0);
    }

    #[test]
    fn extremum_requires_stability() {
        let unstable =
            CommensurateTF::new(RealPoly::constant(1.0), RealPoly::new(vec![-1.0, 1.0]), 1.0)
                .unwrap();
        assert!(matches!(
            extremum_re(&unstable, Extremum::Min, &SweepConfig::default()),
            Err(Error::Unstable(_))
        ));
    }

    #[test]
    fn refinement_never_worse_than_grid() {
        let cfg = SweepConfig::default();
        for alpha in [0.5, 0.7, 1.0] {
            let g = three_pole(alpha);
            let sw = sweep(&g, &cfg);
            let grid_min = sw
                .samples
                .iter()
                .map(|s| s.value.re)
                .fold(f64::INFINITY, f64::min);
            let (refined, _) = extremum_re(&g, Extremum::Min, &cfg).unwrap();
            assert!(refined <= grid_min + 1e-15);
        }
    }

    #[test]
    fn doubling_grid_density_is_stable() {
        // Both densities refine into the same basin, so the extremum
        // moves by far less than the refinement tolerance.
        let coarse = SweepConfig::default();
        let fine = SweepConfig::new(1e-8, 1e8, 80, 1e-10, 1e-9).unwrap();
        for alpha in [0.5, 0.7, 1.0] {
            let g = three_pole(alpha);
            let (a, _) = extremum_re(&g, Extremum::Min, &coarse).unwrap();
            let (b, _) = extremum_re(&g, Extremum::Min, &fine).unwrap();
            assert!((a - b).abs() < coarse.refine_tol, "{}", (a - b).abs());
        }
    }

    #[test]
    fn unit_circle_winding() {
        let pts: Vec<Complex64> = (0..128)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 128.0))
            .collect();
        assert_eq!(polygon_winding(&pts, Complex64::new(0.0, 0.0)).unwrap(), 1);
        assert_eq!(polygon_winding(&pts, Complex64::new(2.0, 0.0)).unwrap(), 0);
    }

    #[test]
    fn winding_invariant_under_rotation_of_start() {
        let pts: Vec<Complex64> = (0..100)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 100.0))
            .collect();
        for shift in [0usize, 13, 57, 99] {
            let rotated: Vec<Complex64> = pts
                .iter()
                .cycle()
                .skip(shift)
                .take(pts.len())
                .copied()
                .collect();
            assert_eq!(
                polygon_winding(&rotated, Complex64::new(0.1, 0.05)).unwrap(),
                1
            );
        }
    }

    #[test]
    fn nyquist_winding_of_stable_loci() {
        let cfg = SweepConfig::default();
        let sw = sweep(&first_order_lag(), &cfg);
        assert_eq!(
            winding_number(&sw.samples, Complex64::new(-2.0, 0.0)).unwrap(),
            0
        );

        // 2/(s+1): locus is the circle through 0 and 2; -1 lies outside.
        let g2 = CommensurateTF::new(RealPoly::constant(2.0), RealPoly::new(vec![1.0, 1.0]), 1.0)
            .unwrap();
        let sw2 = sweep(&g2, &cfg);
        assert_eq!(
            winding_number(&sw2.samples, Complex64::new(-1.0, 0.0)).unwrap(),
            0
        );
        // A point inside the locus circle is encircled once (clockwise
        // for this lag, hence -1 in counterclockwise count).
        assert_eq!(
            winding_number(&sw2.samples, Complex64::new(1.0, 0.0)).unwrap(),
            -1
        );
    }

    #[test]
    fn on_axis_pole_samples_are_skipped_and_reported() {
        // 1/(w^2 + 1) at order 1 has poles exactly on the evaluation
        // ray at omega = 1, which is a grid point of the default sweep.
        let g = CommensurateTF::new(
            RealPoly::constant(1.0),
            RealPoly::new(vec![1.0, 0.0, 1.0]),
            1.0,
        )
        .unwrap();
        let sw = sweep(&g, &SweepConfig::default());
        assert_eq!(sw.skipped_poles.len(), 1);
        assert!((sw.skipped_poles[0] - 1.0).abs() < 1e-12);
        assert!(sw.samples.iter().all(|s| s.value.norm().is_finite()));
    }

    #[test]
    fn coarse_sampling_requests_refinement() {
        // Quarter-turn steps are fine; near-diametric steps are not.
        let coarse: Vec<Complex64> = (0..4)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::PI * k as f64))
            .collect();
        assert!(matches!(
            polygon_winding(&coarse, Complex64::new(0.0, 0.0)),
            Err(Error::RefineNeeded { .. })
        ));
    }

    #[test]
    fn on_curve_point_rejected() {
        let cfg = SweepConfig::default();
        let sw = sweep(&first_order_lag(), &cfg);
        let p = sw.samples[5].value;
        assert!(matches!(
            winding_number(&sw.samples, p),
            Err(Error::PointOnCurve { .. })
        ));
    }
}
