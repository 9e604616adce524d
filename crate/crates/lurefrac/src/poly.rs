//! Real-coefficient polynomials in the commensurate variable w, with
//! simultaneous-iteration root finding and coprime reduction.
//!
//! Coefficients are stored in ascending powers: index k holds the
//! coefficient of `w^k`. The zero polynomial is the empty coefficient
//! vector.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default residual tolerance for the root finder.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
/// Iteration cap for the simultaneous root iteration.
pub const ROOT_ITERATION_CAP: usize = 500;
/// Default relative root-distance threshold for coprime reduction.
pub const DEFAULT_COPRIME_TOL: f64 = 1e-8;

/// Real polynomial, ascending coefficient order.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

impl RealPoly {
    /// Builds a polynomial from ascending coefficients, trimming exact
    /// trailing zeros so the leading coefficient is nonzero.
    pub fn new(coeffs: impl Into<Vec<f64>>) -> Self {
        let mut coeffs = coeffs.into();
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// Monomial `c * w^k`.
    pub fn monomial(c: f64, k: usize) -> Self {
        if c == 0.0 {
            return Self::zero();
        }
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// Real monic reconstruction from a conjugate-closed root set, scaled
    /// by `leading`. Conjugate pairs are multiplied as real quadratics so
    /// no imaginary residue leaks into the coefficients.
    pub fn from_roots(roots: &[Complex64], leading: f64) -> Self {
        let mut p = Self::constant(leading);
        let mut used = vec![false; roots.len()];
        for i in 0..roots.len() {
            if used[i] {
                continue;
            }
            let r = roots[i];
            if r.im == 0.0 {
                p = &p * &Self::new(vec![-r.re, 1.0]);
                used[i] = true;
            } else {
                // Find the conjugate partner.
                let mut partner = None;
                for (j, u) in used.iter().enumerate().skip(i + 1) {
                    if !u && (roots[j] - r.conj()).norm() < 1e-9 * (1.0 + r.norm()) {
                        partner = Some(j);
                        break;
                    }
                }
                match partner {
                    Some(j) => {
                        used[i] = true;
                        used[j] = true;
                        p = &p * &Self::new(vec![r.norm_sqr(), -2.0 * r.re, 1.0]);
                    }
                    None => {
                        // Unpaired complex root: treat as real part only
                        // (callers guarantee conjugate closure, this is a
                        // numerical safety net).
                        used[i] = true;
                        p = &p * &Self::new(vec![-r.re, 1.0]);
                    }
                }
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; 0 for the zero polynomial.
    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Horner evaluation at a real point.
    pub fn eval_real(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Magnitude scale `sum |c_k| |z|^k` used for relative residuals.
    pub fn eval_scale(&self, z_abs: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z_abs + c.abs();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect::<Vec<_>>();
        Self::new(coeffs)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect::<Vec<_>>())
    }

    /// Re-indexes coefficients from powers of w to powers of w^factor,
    /// used when tightening the commensurate base order.
    pub fn upsample(&self, factor: usize) -> Self {
        assert!(factor >= 1);
        if self.is_zero() || factor == 1 {
            return self.clone();
        }
        let mut coeffs = vec![0.0; (self.coeffs.len() - 1) * factor + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k * factor] = c;
        }
        Self { coeffs }
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// `self = q * div + r` and `deg r < deg div`.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        if self.degree().is_none_or(|d| d < dd) {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let nd = self.degree().unwrap();
        let mut quot = vec![0.0; nd - dd + 1];
        let lead = div.leading();
        for k in (dd..=nd).rev() {
            let q = rem[k] / lead;
            quot[k - dd] = q;
            if q != 0.0 {
                for j in 0..=dd {
                    rem[k - dd + j] -= q * div.coeffs[j];
                }
            }
            rem[k] = 0.0;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// All `degree` roots with multiplicity. Complex roots of the real
    /// polynomial come back in exact conjugate pairs (a pairing post-pass
    /// symmetrizes the iteration output).
    ///
    /// `tol` bounds the accepted relative residual |p(r)| / scale(|r|).
    pub fn roots(&self, tol: f64) -> Result<Vec<Complex64>> {
        let deg = self
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidInput("roots of a constant polynomial".into()))?;

        // Peel off exact roots at the origin first.
        let zeros_at_origin = self.coeffs.iter().take_while(|c| **c == 0.0).count();
        let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
        let reduced = Self::new(self.coeffs[zeros_at_origin..].to_vec());
        let rdeg = deg - zeros_at_origin;

        let mut inner = match rdeg {
            0 => Vec::new(),
            1 => vec![Complex64::new(-reduced.coeffs[0] / reduced.coeffs[1], 0.0)],
            2 => quadratic_roots(reduced.coeffs[0], reduced.coeffs[1], reduced.coeffs[2]),
            _ => aberth(&reduced, tol)?,
        };
        inner = pair_conjugates(inner);
        roots.append(&mut inner);
        Ok(roots)
    }
}

impl std::ops::Add for &RealPoly {
    type Output = RealPoly;
    fn add(self, rhs: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![0.0; n];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        RealPoly::new(coeffs)
    }
}

impl std::ops::Sub for &RealPoly {
    type Output = RealPoly;
    fn sub(self, rhs: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![0.0; n];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] -= c;
        }
        RealPoly::new(coeffs)
    }
}

impl std::ops::Mul for &RealPoly {
    type Output = RealPoly;
    fn mul(self, rhs: &RealPoly) -> RealPoly {
        if self.is_zero() || rhs.is_zero() {
            return RealPoly::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RealPoly::new(coeffs)
    }
}

fn quadratic_roots(c0: f64, c1: f64, c2: f64) -> Vec<Complex64> {
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc >= 0.0 {
        // Citardauq on the smaller root avoids cancellation.
        let q = -0.5 * (c1 + c1.signum() * disc.sqrt());
        let (r1, r2) = if q == 0.0 {
            (0.0, 0.0)
        } else {
            (q / c2, c0 / q)
        };
        vec![Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)]
    } else {
        let re = -c1 / (2.0 * c2);
        let im = (-disc).sqrt() / (2.0 * c2.abs());
        vec![Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

/// Aberth-Ehrlich simultaneous iteration. The polynomial here has a
/// nonzero constant term (origin roots are peeled off by the caller).
fn aberth(p: &RealPoly, tol: f64) -> Result<Vec<Complex64>> {
    let deg = p.degree().unwrap();
    let dp = p.derivative();
    let lead = p.leading();

    // Cauchy bound on root magnitudes.
    let cauchy = 1.0
        + p.coeffs[..deg]
            .iter()
            .fold(0.0_f64, |m, c| m.max((c / lead).abs()));
    // Lower bound from the reversed polynomial keeps guesses off zero.
    let c0 = p.coeffs[0].abs();
    let lower = c0
        / (c0 + p.coeffs[1..].iter().fold(0.0_f64, |m, c| m.max(c.abs()))).max(f64::MIN_POSITIVE);
    let radius = (cauchy * lower.max(1e-12)).sqrt().min(cauchy * 0.8);

    // Slightly irrational angular offset breaks the real-axis symmetry
    // that would otherwise trap conjugate pairs.
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.43;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut worst_residual = f64::INFINITY;
    for _ in 0..ROOT_ITERATION_CAP {
        let mut max_step = 0.0_f64;
        worst_residual = 0.0;
        for k in 0..deg {
            let pv = p.eval(z[k]);
            let scale = p.eval_scale(z[k].norm()).max(f64::MIN_POSITIVE);
            worst_residual = worst_residual.max(pv.norm() / scale);
            let dv = dp.eval(z[k]);
            let newton = if dv.norm() == 0.0 {
                // Degenerate derivative: nudge off the stationary point.
                Complex64::new(scale.powf(1.0 / deg as f64) * 1e-3, 1e-3)
            } else {
                pv / dv
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    let d = z[k] - zj;
                    if d.norm() > 0.0 {
                        sum += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let step = if denom.norm() < 1e-300 {
                newton
            } else {
                newton / denom
            };
            z[k] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if worst_residual <= tol || max_step <= 1e-15 {
            // Converged: re-measure residuals once for the final verdict.
            let final_worst = z.iter().fold(0.0_f64, |m, &zk| {
                m.max(p.eval(zk).norm() / p.eval_scale(zk.norm()).max(f64::MIN_POSITIVE))
            });
            if final_worst <= tol.max(1e-10) {
                return Ok(z);
            }
        }
    }
    Err(Error::RootConvergence {
        iterations: ROOT_ITERATION_CAP,
        residual: worst_residual,
    })
}

/// Symmetrizes the root set of a real polynomial: tiny imaginary parts
/// snap to the real axis and genuine complex roots are averaged into
/// exact conjugate pairs.
fn pair_conjugates(mut roots: Vec<Complex64>) -> Vec<Complex64> {
    let snap = |r: &Complex64| r.im.abs() <= 1e-8 * (1.0 + r.norm());
    for r in roots.iter_mut() {
        if snap(r) {
            r.im = 0.0;
        }
    }
    let mut out: Vec<Complex64> = roots.iter().filter(|r| r.im == 0.0).copied().collect();
    let mut upper: Vec<Complex64> = roots.iter().filter(|r| r.im > 0.0).copied().collect();
    let mut lower: Vec<Complex64> = roots.iter().filter(|r| r.im < 0.0).copied().collect();

    while let Some(u) = upper.pop() {
        // Nearest mirror partner in the lower half plane.
        let best = lower
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let da = (**a - u.conj()).norm();
                let db = (**b - u.conj()).norm();
                da.partial_cmp(&db).unwrap()
            })
            .map(|(i, _)| i);
        match best {
            Some(i) => {
                let l = lower.swap_remove(i);
                let re = 0.5 * (u.re + l.re);
                let im = 0.5 * (u.im - l.im);
                out.push(Complex64::new(re, im));
                out.push(Complex64::new(re, -im));
            }
            None => out.push(Complex64::new(u.re, 0.0)),
        }
    }
    for l in lower {
        out.push(Complex64::new(l.re, 0.0));
    }
    out
}

/// Outcome of a coprime reduction.
#[derive(Debug, Clone)]
pub struct CoprimeReduced {
    /// Reduced numerator.
    pub num: RealPoly,
    /// Reduced denominator, leading coefficient normalized to 1.
    pub den: RealPoly,
    /// Total degree of the cancelled common factor.
    pub shared_degree: usize,
    /// Near-cancellation diagnostics (approximate common factors and
    /// almost-common roots left in place).
    pub warnings: Vec<String>,
}

/// Cancels approximate common roots of `num` and `den`, pairing roots
/// whose relative distance is below `tol`, and normalizes the resulting
/// denominator to be monic.
pub fn coprime_reduce(num: &RealPoly, den: &RealPoly, tol: f64) -> Result<CoprimeReduced> {
    if den.is_zero() {
        return Err(Error::InvalidInput(
            "denominator is identically zero".into(),
        ));
    }
    let den_lead = den.leading();
    let normalize =
        |num: &RealPoly, den: &RealPoly| (num.scale(1.0 / den_lead), den.scale(1.0 / den_lead));

    // Nothing to cancel against a constant on either side.
    if num.is_zero() || num.degree() == Some(0) || den.degree() == Some(0) {
        let (n, d) = normalize(num, den);
        return Ok(CoprimeReduced {
            num: n,
            den: d,
            shared_degree: 0,
            warnings: Vec::new(),
        });
    }

    let num_roots = num.roots(DEFAULT_ROOT_TOL)?;
    let den_roots = den.roots(DEFAULT_ROOT_TOL)?;

    let rel_dist = |a: Complex64, b: Complex64| (a - b).norm() / (1.0 + a.norm().max(b.norm()));

    let mut keep_num = num_roots.clone();
    let mut keep_den = den_roots.clone();
    let mut cancelled = 0usize;
    let mut warnings = Vec::new();

    // Greedy nearest-pair cancellation; conjugate symmetry of both root
    // sets makes the pairing conjugate-consistent.
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for (i, rn) in keep_num.iter().enumerate() {
            for (j, rd) in keep_den.iter().enumerate() {
                let d = rel_dist(*rn, *rd);
                if best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
        match best {
            Some((i, j, d)) if d <= tol => {
                // Anything beyond root-finder noise is an inexact
                // cancellation and perturbs the reduced coefficients.
                if d > 1e-10 {
                    warnings.push(format!(
                        "approximate common root cancelled near {:.6e}{:+.6e}i (relative distance {:.3e})",
                        keep_num[i].re, keep_num[i].im, d
                    ));
                }
                keep_num.remove(i);
                keep_den.remove(j);
                cancelled += 1;
            }
            Some((i, j, d)) if d <= tol * 10.0 => {
                warnings.push(format!(
                    "nearly common roots left in place: numerator root {:.6e}{:+.6e}i vs denominator root {:.6e}{:+.6e}i (relative distance {:.3e})",
                    keep_num[i].re, keep_num[i].im, keep_den[j].re, keep_den[j].im, d
                ));
                break;
            }
            _ => break,
        }
    }

    if cancelled == 0 {
        let (n, d) = normalize(num, den);
        return Ok(CoprimeReduced {
            num: n,
            den: d,
            shared_degree: 0,
            warnings,
        });
    }

    let num_lead = num.leading();
    let new_den = RealPoly::from_roots(&keep_den, 1.0);
    let new_num = RealPoly::from_roots(&keep_num, num_lead / den_lead);
    Ok(CoprimeReduced {
        num: new_num,
        den: new_den,
        shared_degree: cancelled,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sorted_re(mut roots: Vec<Complex64>) -> Vec<Complex64> {
        roots.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        roots
    }

    #[test]
    fn eval_constant_term_and_roots() {
        let p = RealPoly::new(vec![1.0, 1.0]);
        assert_eq!(p.eval(Complex64::new(0.0, 0.0)), Complex64::new(1.0, 0.0));

        let q = RealPoly::new(vec![2.0, 3.0, 1.0]); // (w+1)(w+2)
        assert_eq!(q.eval(Complex64::new(-1.0, 0.0)).norm(), 0.0);

        // i^2 + 1 = 0
        let r = RealPoly::new(vec![1.0, 0.0, 1.0]);
        assert!(r.eval(Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn quadratic_real_and_conjugate_roots() {
        let p = RealPoly::new(vec![2.0, 3.0, 1.0]);
        let roots = sorted_re(p.roots(DEFAULT_ROOT_TOL).unwrap());
        assert_relative_eq!(roots[0].re, -2.0, max_relative = 1e-12);
        assert_relative_eq!(roots[1].re, -1.0, max_relative = 1e-12);

        let q = RealPoly::new(vec![1.0, 0.0, 1.0]);
        let roots = sorted_re(q.roots(DEFAULT_ROOT_TOL).unwrap());
        assert_relative_eq!(roots[0].im, -1.0, max_relative = 1e-12);
        assert_relative_eq!(roots[1].im, 1.0, max_relative = 1e-12);
        assert_eq!(roots[0].re, 0.0);
    }

    #[test]
    fn cubic_from_factored_construction() {
        // (w+1)(w+2)(w+3) = 6 + 11 w + 6 w^2 + w^3
        let p = RealPoly::new(vec![6.0, 11.0, 6.0, 1.0]);
        let roots = sorted_re(p.roots(DEFAULT_ROOT_TOL).unwrap());
        let expect = [-3.0, -2.0, -1.0];
        for (r, e) in roots.iter().zip(expect) {
            assert_relative_eq!(r.re, e, max_relative = 1e-9);
            assert_eq!(r.im, 0.0);
        }
        for r in &roots {
            let scale = p.max_abs_coeff();
            assert!(p.eval(*r).norm() <= DEFAULT_ROOT_TOL * scale * 10.0);
        }
    }

    #[test]
    fn roots_of_constant_rejected() {
        assert!(RealPoly::constant(3.0).roots(1e-12).is_err());
        assert!(RealPoly::zero().roots(1e-12).is_err());
    }

    #[test]
    fn origin_roots_peeled() {
        // w^2 (w + 5)
        let p = RealPoly::new(vec![0.0, 0.0, 5.0, 1.0]);
        let roots = sorted_re(p.roots(DEFAULT_ROOT_TOL).unwrap());
        assert_relative_eq!(roots[0].re, -5.0, max_relative = 1e-12);
        assert_eq!(roots[1], Complex64::new(0.0, 0.0));
        assert_eq!(roots[2], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn high_degree_conjugate_closure() {
        // (w^2+1)(w^2+4)(w+1)(w+3) has two conjugate pairs.
        let p = &(&RealPoly::new(vec![1.0, 0.0, 1.0]) * &RealPoly::new(vec![4.0, 0.0, 1.0]))
            * &RealPoly::new(vec![3.0, 4.0, 1.0]);
        let roots = p.roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(roots.len(), 6);
        for r in &roots {
            if r.im != 0.0 {
                assert!(
                    roots.iter().any(|s| *s == r.conj()),
                    "no exact conjugate for {r}"
                );
            }
        }
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = RealPoly::new(vec![4.0, 0.0, -2.0, 1.0, 3.0]);
        let b = RealPoly::new(vec![1.0, 2.0, 1.0]);
        let (q, r) = a.div_rem(&b);
        let back = &(&q * &b) + &r;
        for (x, y) in back.coeffs().iter().zip(a.coeffs()) {
            assert_relative_eq!(x, y, max_relative = 1e-12);
        }
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn coprime_cancels_constructed_common_factor() {
        let num = RealPoly::new(vec![1.0, 1.0]); // w+1
        let den = RealPoly::new(vec![2.0, 3.0, 1.0]); // (w+1)(w+2)
        let red = coprime_reduce(&num, &den, DEFAULT_COPRIME_TOL).unwrap();
        assert_eq!(red.shared_degree, 1);
        assert_eq!(red.den.degree(), Some(1));
        assert_relative_eq!(red.den.coeffs()[0], 2.0, max_relative = 1e-9);
        assert_relative_eq!(red.num.coeffs()[0], 1.0, max_relative = 1e-9);
        assert_eq!(red.num.degree(), Some(0));
    }

    #[test]
    fn coprime_leaves_distinct_roots_alone() {
        let num = RealPoly::new(vec![1.0, 1.0]);
        let den = RealPoly::new(vec![2.0, 1.0]);
        let red = coprime_reduce(&num, &den, DEFAULT_COPRIME_TOL).unwrap();
        assert_eq!(red.shared_degree, 0);
        assert_eq!(red.num, num);
        assert_eq!(red.den, den);
    }

    #[test]
    fn coprime_pairs_within_tolerance() {
        let num = RealPoly::new(vec![1.000_000_1, 1.0]); // w + 1.0000001
        let den = RealPoly::new(vec![3.0, 4.0, 1.0]); // (w+1)(w+3)
        let red = coprime_reduce(&num, &den, 1e-3).unwrap();
        assert_eq!(red.shared_degree, 1);
        assert_eq!(red.num.degree(), Some(0));
        assert_relative_eq!(red.den.coeffs()[0], 3.0, max_relative = 1e-6);
        assert!(!red.warnings.is_empty());
    }

    #[test]
    fn reduced_pair_shares_no_roots() {
        let num = RealPoly::new(vec![2.0, 3.0, 1.0]); // (w+1)(w+2)
        let den = &RealPoly::new(vec![2.0, 3.0, 1.0]) * &RealPoly::new(vec![5.0, 1.0]);
        let red = coprime_reduce(&num, &den, DEFAULT_COPRIME_TOL).unwrap();
        assert_eq!(red.shared_degree, 2);
        let dr = red.den.roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(dr.len(), 1);
        assert_relative_eq!(dr[0].re, -5.0, max_relative = 1e-9);
    }
}
