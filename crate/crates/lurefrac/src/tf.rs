//! Commensurate fractional transfer functions F(s^alpha) = N(w)/D(w)
//! with w = s^alpha: construction, rational arithmetic, principal-branch
//! frequency evaluation, admissibility reports, and pseudo-state
//! realization.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::poly::{coprime_reduce, RealPoly, DEFAULT_COPRIME_TOL, DEFAULT_ROOT_TOL};

/// Cap on the rationalization denominator when reducing mixed fractional
/// exponents to a single commensurate base.
pub const COMMENSURATE_DENOMINATOR_CAP: u64 = 1000;
const COMMENSURATE_TOL: f64 = 1e-9;

/// A commensurate fractional-order transfer function.
///
/// Invariants maintained by construction: `0 < alpha < 2`, numerator and
/// denominator coprime (within the reduction tolerance), denominator
/// monic, numerator degree <= denominator degree.
#[derive(Debug, Clone)]
pub struct CommensurateTF {
    alpha: f64,
    num: RealPoly,
    den: RealPoly,
    /// Reduction diagnostics carried along from construction.
    warnings: Vec<String>,
}

impl CommensurateTF {
    /// Builds a transfer function from ascending coefficients of N and D
    /// in w = s^alpha, reducing common factors and normalizing D monic.
    pub fn new(num: RealPoly, den: RealPoly, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) || !alpha.is_finite() {
            return Err(Error::InvalidOrder(alpha));
        }
        if den.is_zero() {
            return Err(Error::InvalidInput(
                "denominator is identically zero".into(),
            ));
        }
        let red = coprime_reduce(&num, &den, DEFAULT_COPRIME_TOL)?;
        let m = red.num.degree();
        let n = red.den.degree().unwrap_or(0);
        if let Some(m) = m {
            if m > n {
                return Err(Error::Improper {
                    num_degree: m,
                    den_degree: n,
                });
            }
        }
        Ok(Self {
            alpha,
            num: red.num,
            den: red.den,
            warnings: red.warnings,
        })
    }

    /// The zero transfer function (numerator identically zero).
    pub fn zero() -> Self {
        Self {
            alpha: 1.0,
            num: RealPoly::zero(),
            den: RealPoly::constant(1.0),
            warnings: Vec::new(),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self {
            alpha: 1.0,
            num: RealPoly::constant(c),
            den: RealPoly::constant(1.0),
            warnings: Vec::new(),
        }
    }

    /// Builds a transfer function from raw `(coefficient, exponent)`
    /// terms of s, e.g. `b * s^1.4`. All exponents are rationalized to a
    /// common commensurate base alpha; construction fails if they do not
    /// share one within 1e-9 (denominator cap 1000).
    pub fn from_terms(num_terms: &[(f64, f64)], den_terms: &[(f64, f64)]) -> Result<Self> {
        let exps: Vec<f64> = num_terms
            .iter()
            .chain(den_terms)
            .map(|&(_, e)| e)
            .filter(|&e| e != 0.0)
            .collect();
        for &e in &exps {
            if e < 0.0 || !e.is_finite() {
                return Err(Error::InvalidInput(format!("negative exponent {e}")));
            }
        }
        let base = common_base(&exps)?;
        let build = |terms: &[(f64, f64)]| -> Result<RealPoly> {
            let mut p = RealPoly::zero();
            for &(c, e) in terms {
                let k = (e / base).round();
                if ((e / base) - k).abs() > COMMENSURATE_TOL * (1.0 + (e / base).abs()) {
                    return Err(Error::NotCommensurable {
                        cap: COMMENSURATE_DENOMINATOR_CAP,
                        detail: format!("exponent {e} is not a multiple of base {base}"),
                    });
                }
                p = &p + &RealPoly::monomial(c, k as usize);
            }
            Ok(p)
        };
        Self::new(build(num_terms)?, build(den_terms)?, base)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn num(&self) -> &RealPoly {
        &self.num
    }

    pub fn den(&self) -> &RealPoly {
        &self.den
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerator degree (None for the zero transfer function) and
    /// denominator degree in w.
    pub fn degrees(&self) -> (Option<usize>, usize) {
        (self.num.degree(), self.den.degree().unwrap_or(0))
    }

    /// Principal-branch evaluation point w = (j omega)^alpha, with
    /// conjugate symmetry for negative frequencies.
    pub fn w_of(&self, omega: f64) -> Complex64 {
        if omega == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::from_polar(
                omega.abs().powf(self.alpha),
                omega.signum() * self.alpha * PI / 2.0,
            )
        }
    }

    /// Frequency response on the principal branch. Returns `None` when
    /// the evaluation point is a pole of D (sweeps skip such samples).
    pub fn freq_value(&self, omega: f64) -> Option<Complex64> {
        let w = self.w_of(omega);
        let d = self.den.eval(w);
        let scale = self.den.eval_scale(w.norm()).max(f64::MIN_POSITIVE);
        if d.norm() <= 1e-12 * scale {
            return None;
        }
        Some(self.num.eval(w) / d)
    }

    /// High-frequency limit of the response along the evaluation ray:
    /// 0 for strictly proper, leading-coefficient ratio for m = n.
    pub fn hf_limit(&self) -> f64 {
        match (self.num.degree(), self.den.degree().unwrap_or(0)) {
            (None, _) => 0.0,
            (Some(m), n) if m < n => 0.0,
            _ => self.num.leading() / self.den.leading(),
        }
    }

    /// Dc value N(0)/D(0); the l1 norm of any transfer function with a
    /// certified nonnegative impulse response.
    pub fn dc_value(&self) -> Result<f64> {
        let d0 = self.den.eval_real(0.0);
        if d0.abs() <= 1e-14 * self.den.max_abs_coeff() {
            return Err(Error::PoleAtZero);
        }
        if self.num.is_zero() {
            return Ok(0.0);
        }
        Ok(self.num.eval_real(0.0) / d0)
    }

    /// Full admissibility report: Matignon pole test, L2 finiteness of
    /// the impulse response, relative degree, Popov applicability.
    pub fn stability_report(&self) -> Result<StabilityReport> {
        let half_sector = self.alpha * PI / 2.0;
        let mut pole_args = Vec::new();
        let mut n_p = 0usize;
        if self.den.degree().unwrap_or(0) >= 1 {
            for root in self.den.roots(DEFAULT_ROOT_TOL)? {
                let arg_abs = root.arg().abs();
                let margin = arg_abs - half_sector;
                if margin <= 0.0 {
                    n_p += 1;
                }
                pole_args.push(PoleArg {
                    root,
                    arg_abs,
                    margin,
                });
            }
        }
        let bibo = n_p == 0;

        let (relative_degree, l2_finite, popov_applicable) = match self.num.degree() {
            None => (f64::INFINITY, true, true),
            Some(m) => {
                let n = self.den.degree().unwrap_or(0);
                let rel = (n as f64 - m as f64) * self.alpha;
                (rel, rel > 0.5, rel >= 1.0 - 1e-12)
            }
        };

        Ok(StabilityReport {
            bibo,
            pole_args,
            l2_finite,
            relative_degree,
            popov_applicable,
            n_p,
        })
    }

    /// Controllable-canonical pseudo-state realization. For proper but
    /// not strictly proper functions, the feedthrough is split off first
    /// so the state part is strictly proper.
    pub fn realize(&self) -> FracStateSpace {
        let n = self.den.degree().unwrap_or(0);
        if n == 0 {
            return FracStateSpace {
                alpha: self.alpha,
                n: 0,
                a: Vec::new(),
                b: Vec::new(),
                c: Vec::new(),
                d0: self.num.eval_real(0.0) / self.den.eval_real(0.0),
            };
        }
        // Denominator is monic by construction.
        let (q, rem) = self.num.div_rem(&self.den);
        let d0 = q.eval_real(0.0); // q is a constant (m <= n)
        let mut c = rem.coeffs().to_vec();
        c.resize(n, 0.0);

        let mut a = vec![0.0; n * n];
        for i in 0..n - 1 {
            a[i * n + i + 1] = 1.0;
        }
        for j in 0..n {
            a[(n - 1) * n + j] = -self.den.coeffs()[j];
        }
        let mut b = vec![0.0; n];
        b[n - 1] = 1.0;

        FracStateSpace {
            alpha: self.alpha,
            n,
            a,
            b,
            c,
            d0,
        }
    }

    fn unify(&self, other: &Self) -> Result<(RealPoly, RealPoly, RealPoly, RealPoly, f64)> {
        // A constant (degree-0 over degree-0) carries no order of its own.
        let self_const = self.num.degree().unwrap_or(0) == 0 && self.den.degree().unwrap_or(0) == 0;
        let other_const =
            other.num.degree().unwrap_or(0) == 0 && other.den.degree().unwrap_or(0) == 0;
        if self_const || other_const || (self.alpha - other.alpha).abs() < 1e-12 {
            let alpha = if self_const { other.alpha } else { self.alpha };
            return Ok((
                self.num.clone(),
                self.den.clone(),
                other.num.clone(),
                other.den.clone(),
                alpha,
            ));
        }
        let base = common_base(&[self.alpha, other.alpha])?;
        let fa = (self.alpha / base).round() as usize;
        let fb = (other.alpha / base).round() as usize;
        Ok((
            self.num.upsample(fa),
            self.den.upsample(fa),
            other.num.upsample(fb),
            other.den.upsample(fb),
            base,
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (na, da, nb, db, alpha) = self.unify(other)?;
        let num = &(&na * &db) + &(&nb * &da);
        let den = &da * &db;
        Self::new(num, den, alpha)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (na, da, nb, db, alpha) = self.unify(other)?;
        Self::new(&na * &nb, &da * &db, alpha)
    }

    /// Division; fails if the quotient is improper.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::InvalidInput(
                "division by the zero transfer function".into(),
            ));
        }
        let (na, da, nb, db, alpha) = self.unify(other)?;
        Self::new(&na * &db, &da * &nb, alpha)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.num = out.num.scale(s);
        out
    }
}

/// Per-pole Matignon data: |arg(root)| compared against alpha*pi/2.
#[derive(Debug, Clone)]
pub struct PoleArg {
    pub root: Complex64,
    pub arg_abs: f64,
    /// `|arg| - alpha*pi/2`; nonpositive means the pole violates the
    /// stability sector.
    pub margin: f64,
}

/// Stability and admissibility summary of a commensurate transfer
/// function.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    /// True iff every denominator root w satisfies |arg w| > alpha*pi/2.
    pub bibo: bool,
    pub pole_args: Vec<PoleArg>,
    /// True iff the impulse response has finite L2 norm, i.e. the degree
    /// gap satisfies (n - m) * alpha > 1/2.
    pub l2_finite: bool,
    /// (n - m) * alpha.
    pub relative_degree: f64,
    /// True iff the relative degree is at least 1.
    pub popov_applicable: bool,
    /// Number of poles violating the argument condition.
    pub n_p: usize,
}

/// Pseudo-state realization D^alpha x = A x + B u, y = C x + d0 u,
/// stored row-major.
#[derive(Debug, Clone)]
pub struct FracStateSpace {
    pub alpha: f64,
    pub n: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub d0: f64,
}

impl FracStateSpace {
    /// A x + B u into `out`.
    pub fn apply(&self, x: &[f64], u: f64, out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate().take(self.n) {
            let row = &self.a[i * self.n..(i + 1) * self.n];
            let acc: f64 = row.iter().zip(x).map(|(aij, xj)| aij * xj).sum();
            *o = acc + self.b[i] * u;
        }
    }

    /// C x.
    pub fn output(&self, x: &[f64]) -> f64 {
        self.c.iter().zip(x).map(|(c, x)| c * x).sum()
    }

    /// Frequency response C (w I - A)^-1 B + d0 at w = (j omega)^alpha;
    /// `None` if w is an eigenvalue of A.
    pub fn freq_response(&self, omega: f64) -> Option<Complex64> {
        if self.n == 0 {
            return Some(Complex64::new(self.d0, 0.0));
        }
        let w = if omega == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::from_polar(
                omega.abs().powf(self.alpha),
                omega.signum() * self.alpha * PI / 2.0,
            )
        };
        let n = self.n;
        let mut m = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                let v = -self.a[i * n + j];
                m[i * n + j] = Complex64::new(v, 0.0);
            }
            m[i * n + i] += w;
        }
        let mut rhs: Vec<Complex64> = self.b.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        solve_complex(&mut m, &mut rhs, n)?;
        let mut y = Complex64::new(self.d0, 0.0);
        for (c, x) in self.c.iter().zip(&rhs) {
            y += c * x;
        }
        Some(y)
    }
}

/// In-place Gaussian elimination with partial pivoting; returns None on
/// a (numerically) singular matrix.
fn solve_complex(m: &mut [Complex64], rhs: &mut [Complex64], n: usize) -> Option<()> {
    for col in 0..n {
        let mut pivot = col;
        let mut best = m[col * n + col].norm();
        for row in col + 1..n {
            let v = m[row * n + col].norm();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best < 1e-300 {
            return None;
        }
        if pivot != col {
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
            }
            rhs.swap(col, pivot);
        }
        let p = m[col * n + col];
        for row in col + 1..n {
            let f = m[row * n + col] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = m[col * n + j];
                m[row * n + j] -= f * v;
            }
            let r = rhs[col];
            rhs[row] -= f * r;
        }
    }
    for col in (0..n).rev() {
        let mut acc = rhs[col];
        for j in col + 1..n {
            acc -= m[col * n + j] * rhs[j];
        }
        rhs[col] = acc / m[col * n + col];
    }
    Some(())
}

/// Best rational approximation p/q with q <= cap, by continued
/// fractions.
fn rationalize(x: f64, cap: u64) -> Option<(i64, i64)> {
    if x < 0.0 || !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, x.floor() as i64, 1i64);
    let mut frac = x - x.floor();
    for _ in 0..64 {
        if (x - p1 as f64 / q1 as f64).abs() <= COMMENSURATE_TOL * x.max(1.0) {
            return Some((p1, q1));
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let p2 = a as i64 * p1 + p0;
        let q2 = a as i64 * q1 + q0;
        if q2 as u64 > cap {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    if (x - p1 as f64 / q1 as f64).abs() <= COMMENSURATE_TOL * x.max(1.0) {
        Some((p1, q1))
    } else {
        None
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Largest common commensurate base of a set of positive exponents,
/// clamped below 2 so the result is an admissible order.
pub fn common_base(exponents: &[f64]) -> Result<f64> {
    let nonzero: Vec<f64> = exponents.iter().copied().filter(|&e| e != 0.0).collect();
    if nonzero.is_empty() {
        return Ok(1.0);
    }
    let mut fracs = Vec::with_capacity(nonzero.len());
    let mut lcm: i64 = 1;
    for &e in &nonzero {
        let (p, q) = rationalize(e, COMMENSURATE_DENOMINATOR_CAP).ok_or_else(|| {
            Error::NotCommensurable {
                cap: COMMENSURATE_DENOMINATOR_CAP,
                detail: format!("exponent {e} has no rational form with a small denominator"),
            }
        })?;
        let g = gcd(lcm, q);
        lcm = lcm
            .checked_mul(q / g)
            .ok_or_else(|| Error::NotCommensurable {
                cap: COMMENSURATE_DENOMINATOR_CAP,
                detail: "denominator lcm overflow".into(),
            })?;
        if lcm > 1_000_000 {
            return Err(Error::NotCommensurable {
                cap: COMMENSURATE_DENOMINATOR_CAP,
                detail: "denominator lcm exceeds 1e6".into(),
            });
        }
        fracs.push((p, q));
    }
    let mut num_gcd = 0i64;
    for &(p, q) in &fracs {
        num_gcd = gcd(num_gcd, p * (lcm / q));
    }
    if num_gcd == 0 {
        return Err(Error::NotCommensurable {
            cap: COMMENSURATE_DENOMINATOR_CAP,
            detail: "all exponents rationalize to zero".into(),
        });
    }
    // Clamp the base into (0, 2) by an integer subdivision.
    let mut denom = lcm;
    while num_gcd as f64 / denom as f64 >= 2.0 {
        denom = denom
            .checked_mul(2)
            .ok_or_else(|| Error::NotCommensurable {
                cap: COMMENSURATE_DENOMINATOR_CAP,
                detail: "base subdivision overflow".into(),
            })?;
    }
    let base = num_gcd as f64 / denom as f64;
    for &e in &nonzero {
        let k = (e / base).round();
        if (e - k * base).abs() > COMMENSURATE_TOL * e.max(1.0) {
            return Err(Error::NotCommensurable {
                cap: COMMENSURATE_DENOMINATOR_CAP,
                detail: format!("exponent {e} is not an integer multiple of base {base}"),
            });
        }
    }
    Ok(base)
}
