//! Constructors for families of fractional plants whose Lur'e loops are
//! certified stable by the multiplier criteria. Each constructor returns
//! the plant, its companion multiplier (certified), and the check the
//! pair must satisfy.

use crate::criteria::{
    certify_nonneg, gzf_check, zames_falb_check, CriterionVerdict, MultiplierZ, QuasiMonotoneBound,
};
use crate::error::{Error, Result};
use crate::freq::SweepConfig;
use crate::poly::RealPoly;
use crate::sim::SimConfig;
use crate::tf::CommensurateTF;

/// One first-order summand gain / (s^alpha + pole).
#[derive(Debug, Clone, Copy)]
pub struct ClassTerm {
    pub gain: f64,
    pub pole: f64,
    pub alpha: f64,
}

impl ClassTerm {
    pub fn new(gain: f64, pole: f64, alpha: f64) -> Self {
        Self { gain, pole, alpha }
    }

    fn validate(&self, what: &str) -> Result<()> {
        if self.gain <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "constraint violated: {what} term gains must be positive (got {})",
                self.gain
            )));
        }
        if self.pole <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "constraint violated: {what} term poles must be positive (got {})",
                self.pole
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "constraint violated: {what} term orders must lie in (0, 1] (got {})",
                self.alpha
            )));
        }
        Ok(())
    }

    fn tf(&self) -> Result<CommensurateTF> {
        CommensurateTF::new(
            RealPoly::constant(self.gain),
            RealPoly::new(vec![self.pole, 1.0]),
            self.alpha,
        )
    }
}

/// Which criterion a class instance must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RequiredCheck {
    Zf,
    Gzf,
}

impl RequiredCheck {
    pub fn as_str(&self) -> &'static str {
        match self {
            RequiredCheck::Zf => "zf",
            RequiredCheck::Gzf => "gzf",
        }
    }
}

/// Certified-stable plant families.
///
/// - `Zf1`: positive feedthrough plus a positive sum of stable
///   first-order fractional terms. The real part of the locus stays
///   positive, so the empty multiplier certifies it.
/// - `Zf2`: a `Zf1` core wrapped by a lead factor
///   (s^alpha + zero)/(s^alpha + pole) with zero > pole > 0; the
///   companion multiplier is (zero - pole)/(s^alpha + zero).
/// - `Zf3`: a `Zf1` core wrapped by the inverse of
///   1 - gain (s^alpha + zero)/((s^alpha + pole_a)(s^alpha + pole_c)).
/// - `Gzf`: (1 - Z) times a positive sum, with Z an interleaved
///   gain-scaled rational; verified through the generalized test.
#[derive(Debug, Clone)]
pub enum ClassSpec {
    Zf1 {
        offset: f64,
        terms: Vec<ClassTerm>,
    },
    Zf2 {
        zero: f64,
        pole: f64,
        alpha: f64,
        offset: f64,
        terms: Vec<ClassTerm>,
    },
    Zf3 {
        gain: f64,
        zero: f64,
        pole_a: f64,
        pole_c: f64,
        alpha: f64,
        offset: f64,
        terms: Vec<ClassTerm>,
    },
    Gzf {
        gain: f64,
        zeros: Vec<f64>,
        poles: Vec<f64>,
        alpha: f64,
        terms: Vec<ClassTerm>,
    },
}

/// A constructed class instance: the plant, its certified companion
/// multiplier, and the criterion it must pass.
#[derive(Debug, Clone)]
pub struct ClassInstance {
    pub plant: CommensurateTF,
    pub multiplier: MultiplierZ,
    pub required_check: RequiredCheck,
    pub notes: Vec<String>,
}

fn positive_sum(offset: f64, terms: &[ClassTerm], offset_required: bool) -> Result<CommensurateTF> {
    if offset_required && offset <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "constraint violated: feedthrough offset must be positive (got {offset})"
        )));
    }
    if offset < 0.0 {
        return Err(Error::InvalidInput(format!(
            "constraint violated: feedthrough offset must be nonnegative (got {offset})"
        )));
    }
    if terms.is_empty() {
        return Err(Error::InvalidInput(
            "constraint violated: at least one first-order term is required".into(),
        ));
    }
    let mut g = CommensurateTF::constant(offset);
    for t in terms {
        t.validate("sum")?;
        g = g.add(&t.tf()?)?;
    }
    Ok(g)
}

fn probe_cfg() -> SimConfig {
    SimConfig {
        h: 0.02,
        t_end: 50.0,
        ..Default::default()
    }
}

impl ClassSpec {
    /// Builds the plant/multiplier pair of the class, certifying the
    /// multiplier along the way. Violated parameter constraints come
    /// back as named invalid-input errors.
    pub fn instantiate(&self) -> Result<ClassInstance> {
        match self {
            ClassSpec::Zf1 { offset, terms } => {
                let plant = positive_sum(*offset, terms, true)?;
                Ok(ClassInstance {
                    plant,
                    multiplier: MultiplierZ::zero(),
                    required_check: RequiredCheck::Zf,
                    notes: vec!["positive-sum class: empty multiplier".into()],
                })
            }
            ClassSpec::Zf2 {
                zero,
                pole,
                alpha,
                offset,
                terms,
            } => {
                if !(*zero > *pole && *pole > 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "constraint violated: need zero > pole > 0 (got zero = {zero}, pole = {pole})"
                    )));
                }
                if !(*alpha > 0.0 && *alpha <= 1.0) {
                    return Err(Error::InvalidInput(format!(
                        "constraint violated: lead order must lie in (0, 1] (got {alpha})"
                    )));
                }
                let core = positive_sum(*offset, terms, true)?;
                let lead = CommensurateTF::new(
                    RealPoly::new(vec![*zero, 1.0]),
                    RealPoly::new(vec![*pole, 1.0]),
                    *alpha,
                )?;
                let plant = lead.mul(&core)?;
                let z_tf = CommensurateTF::new(
                    RealPoly::constant(zero - pole),
                    RealPoly::new(vec![*zero, 1.0]),
                    *alpha,
                )?;
                let multiplier = certify_nonneg(&z_tf, &probe_cfg())?;
                let l1 = multiplier.l1_norm.unwrap_or(f64::NAN);
                Ok(ClassInstance {
                    plant,
                    multiplier,
                    required_check: RequiredCheck::Zf,
                    notes: vec![format!(
                        "lead-wrapped class: multiplier l1 = Z(0) = (zero-pole)/zero = {l1:.6} \
                         (direct dc evaluation; the (zero-pole)/pole closed form sometimes \
                         quoted for this family is not the dc value)"
                    )],
                })
            }
            ClassSpec::Zf3 {
                gain,
                zero,
                pole_a,
                pole_c,
                alpha,
                offset,
                terms,
            } => {
                if !(*gain > 0.0 && *pole_c > 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "constraint violated: need gain > 0 and pole_c > 0 (got {gain}, {pole_c})"
                    )));
                }
                if !(*zero > *pole_a && *pole_a > 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "constraint violated: need zero > pole_a > 0 (got zero = {zero}, pole_a = {pole_a})"
                    )));
                }
                if !(gain * zero < pole_a * pole_c) {
                    return Err(Error::InvalidInput(format!(
                        "constraint violated: gain * zero < pole_a * pole_c (got {} >= {})",
                        gain * zero,
                        pole_a * pole_c
                    )));
                }
                if !(pole_a + pole_c > *gain) {
                    return Err(Error::InvalidInput(format!(
                        "constraint violated: pole_a + pole_c > gain (got {} <= {gain})",
                        pole_a + pole_c
                    )));
                }
                if !(*alpha > 0.0 && *alpha <= 1.0) {
                    return Err(Error::InvalidInput(format!(
                        "constraint violated: wrap order must lie in (0, 1] (got {alpha})"
                    )));
                }
                let core = positive_sum(*offset, terms, true)?;
                let z_tf = CommensurateTF::new(
                    RealPoly::new(vec![gain * zero, *gain]),
                    &RealPoly::new(vec![*pole_a, 1.0]) * &RealPoly::new(vec![*pole_c, 1.0]),
                    *alpha,
                )?;
                let one = CommensurateTF::constant(1.0);
                let wrap = one.sub(&z_tf)?;
                let plant = core.div(&wrap)?;
                let multiplier = certify_nonneg(&z_tf, &probe_cfg())?;
                Ok(ClassInstance {
                    plant,
                    multiplier,
                    required_check: RequiredCheck::Zf,
                    notes: vec![format!(
                        "resonant-wrapped class: multiplier l1 = {:.6}",
                        z_tf.dc_value()?
                    )],
                })
            }
            ClassSpec::Gzf {
                gain,
                zeros,
                poles,
                alpha,
                terms,
            } => {
                if *gain <= 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "constraint violated: gain must be positive (got {gain})"
                    )));
                }
                if zeros.len() > poles.len() {
                    return Err(Error::InvalidInput(format!(
                        "constraint violated: need at least as many poles as zeros (got {} zeros, {} poles)",
                        zeros.len(),
                        poles.len()
                    )));
                }
                if zeros.iter().chain(poles).any(|v| *v <= 0.0) {
                    return Err(Error::InvalidInput(
                        "constraint violated: multiplier zeros and poles must be positive".into(),
                    ));
                }
                if !(*alpha > 0.0 && *alpha <= 1.0) {
                    return Err(Error::InvalidInput(format!(
                        "constraint violated: multiplier order must lie in (0, 1] (got {alpha})"
                    )));
                }
                // Greedy matching: every zero needs its own strictly
                // smaller pole.
                let mut zs: Vec<f64> = zeros.clone();
                let mut ps: Vec<f64> = poles.clone();
                zs.sort_by(|a, b| a.partial_cmp(b).unwrap());
                ps.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let mut used = vec![false; ps.len()];
                for z in &zs {
                    let slot = ps
                        .iter()
                        .enumerate()
                        .find(|(j, p)| !used[*j] && **p < *z)
                        .map(|(j, _)| j);
                    match slot {
                        Some(j) => used[j] = true,
                        None => {
                            return Err(Error::InvalidInput(format!(
                                "constraint violated: multiplier zero {z} has no unmatched pole below it"
                            )))
                        }
                    }
                }
                let ratio: f64 = gain * zs.iter().product::<f64>() / ps.iter().product::<f64>();
                if !(ratio < 1.0) {
                    return Err(Error::InvalidInput(format!(
                        "constraint violated: gain * prod(zeros)/prod(poles) must stay below 1 (got {ratio})"
                    )));
                }

                let mut znum = RealPoly::constant(*gain);
                for z in &zs {
                    znum = &znum * &RealPoly::new(vec![*z, 1.0]);
                }
                let mut zden = RealPoly::constant(1.0);
                for p in &ps {
                    zden = &zden * &RealPoly::new(vec![*p, 1.0]);
                }
                let z_tf = CommensurateTF::new(znum, zden, *alpha)?;

                if terms.is_empty() {
                    return Err(Error::InvalidInput(
                        "constraint violated: at least one first-order term is required".into(),
                    ));
                }
                let core = positive_sum(0.0, terms, false)?;
                let one = CommensurateTF::constant(1.0);
                let plant = one.sub(&z_tf)?.mul(&core)?;
                let multiplier = certify_nonneg(&z_tf, &probe_cfg())?;
                let notes = vec![format!(
                    "multiplier-shaped class: dc ratio {ratio:.6}, certified l1 = {:.6} ({})",
                    multiplier.l1_norm.unwrap_or(f64::NAN),
                    multiplier.certification.as_str()
                )];
                Ok(ClassInstance {
                    plant,
                    multiplier,
                    required_check: RequiredCheck::Gzf,
                    notes,
                })
            }
        }
    }
}

/// Runs the check named by the instance. The classes are built so the
/// verdict passes; a failure is a construction defect and is flagged as
/// such in the notes.
pub fn verify_class_instance(
    instance: &ClassInstance,
    cfg: &SweepConfig,
) -> Result<CriterionVerdict> {
    let mut verdict = match instance.required_check {
        RequiredCheck::Zf => zames_falb_check(&instance.plant, &instance.multiplier, false, cfg)?,
        RequiredCheck::Gzf => gzf_check(
            &instance.plant,
            &instance.multiplier,
            &QuasiMonotoneBound::new(0.0)?,
            cfg,
        )?,
    };
    let mut notes = instance.notes.clone();
    if !verdict.pass {
        notes.push("class construction defect: the companion check failed".into());
    }
    notes.append(&mut verdict.notes);
    verdict.notes = notes;
    Ok(verdict)
}
