//! JSON system-definition schema and conversion into library types.

use serde::Deserialize;

use lurefrac::classes::{ClassSpec, ClassTerm};
use lurefrac::criteria::{RLMultiplier, Sector};
use lurefrac::freq::SweepConfig;
use lurefrac::poly::RealPoly;
use lurefrac::sim::{Nonlinearity, PulseInput, SimConfig};
use lurefrac::tf::CommensurateTF;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDefinition {
    pub plant: PlantDef,
    #[serde(default)]
    pub nonlinearity: Option<NonlinearityDef>,
    /// Sector bounds [lambda, gamma].
    #[serde(default)]
    pub sector: Option<[f64; 2]>,
    #[serde(default)]
    pub multiplier: Option<MultiplierDef>,
    /// Quasi-monotone slope bound D for the generalized test.
    #[serde(default)]
    pub d_bound: Option<f64>,
    /// Pulse input for simulations.
    #[serde(default)]
    pub input: Option<PulseDef>,
    #[serde(default)]
    pub sweep: Option<SweepDef>,
    #[serde(default)]
    pub sim: Option<SimDef>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum PlantDef {
    Rational {
        alpha: f64,
        /// Ascending coefficients of the numerator in w = s^alpha.
        num: Vec<f64>,
        den: Vec<f64>,
    },
    Class {
        class: ClassDef,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ClassDef {
    Zf1 {
        offset: f64,
        terms: Vec<TermDef>,
    },
    Zf2 {
        zero: f64,
        pole: f64,
        alpha: f64,
        offset: f64,
        terms: Vec<TermDef>,
    },
    Zf3 {
        gain: f64,
        zero: f64,
        pole_a: f64,
        pole_c: f64,
        alpha: f64,
        offset: f64,
        terms: Vec<TermDef>,
    },
    Gzf {
        gain: f64,
        zeros: Vec<f64>,
        poles: Vec<f64>,
        alpha: f64,
        terms: Vec<TermDef>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDef {
    pub gain: f64,
    pub pole: f64,
    pub alpha: f64,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NonlinearityDef {
    Saturation { slope: f64, limit: f64 },
    Gain { k: f64 },
    PiecewiseLinear { points: Vec<(f64, f64)> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplierDef {
    /// Explicit transfer function Z.
    #[serde(default)]
    pub z: Option<TfDef>,
    /// Interlaced lead/lag description.
    #[serde(default)]
    pub rl: Option<RlDef>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TfDef {
    pub alpha: f64,
    pub num: Vec<f64>,
    pub den: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RlDef {
    pub zeros: Vec<f64>,
    pub poles: Vec<f64>,
    #[serde(default)]
    pub rc: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseDef {
    pub amplitude: f64,
    pub t_on: f64,
    pub t_off: f64,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SweepDef {
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub points_per_decade: Option<usize>,
    pub refine_tol: Option<f64>,
    pub epsilon: Option<f64>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SimDef {
    pub h: Option<f64>,
    pub t_end: Option<f64>,
    pub loop_tol: Option<f64>,
}

impl SystemDefinition {
    pub fn plant_tf(&self, alpha_override: Option<f64>) -> Result<CommensurateTF, String> {
        match &self.plant {
            PlantDef::Rational { alpha, num, den } => {
                let a = alpha_override.unwrap_or(*alpha);
                CommensurateTF::new(RealPoly::new(num.clone()), RealPoly::new(den.clone()), a)
                    .map_err(|e| e.to_string())
            }
            PlantDef::Class { class } => {
                let inst = class
                    .to_spec(alpha_override)
                    .instantiate()
                    .map_err(|e| e.to_string())?;
                Ok(inst.plant)
            }
        }
    }

    pub fn class_spec(&self, alpha_override: Option<f64>) -> Option<ClassSpec> {
        match &self.plant {
            PlantDef::Class { class } => Some(class.to_spec(alpha_override)),
            PlantDef::Rational { .. } => None,
        }
    }

    pub fn sector(&self, flag: Option<(f64, f64)>) -> Result<Option<Sector>, String> {
        let raw = flag.or(self.sector.map(|[a, b]| (a, b)));
        raw.map(|(lambda, gamma)| Sector::new(lambda, gamma).map_err(|e| e.to_string()))
            .transpose()
    }

    pub fn nonlinearity(&self) -> Result<Option<Nonlinearity>, String> {
        self.nonlinearity
            .as_ref()
            .map(|def| {
                match def {
                    NonlinearityDef::Saturation { slope, limit } => {
                        Nonlinearity::saturation(*slope, *limit)
                    }
                    NonlinearityDef::Gain { k } => Nonlinearity::gain(*k),
                    NonlinearityDef::PiecewiseLinear { points } => {
                        Nonlinearity::piecewise(points.clone())
                    }
                }
                .map_err(|e| e.to_string())
            })
            .transpose()
    }

    pub fn multiplier_tf(&self) -> Result<Option<CommensurateTF>, String> {
        match &self.multiplier {
            None => Ok(None),
            Some(MultiplierDef {
                z: Some(tf),
                rl: None,
            }) => Ok(Some(
                CommensurateTF::new(
                    RealPoly::new(tf.num.clone()),
                    RealPoly::new(tf.den.clone()),
                    tf.alpha,
                )
                .map_err(|e| e.to_string())?,
            )),
            Some(MultiplierDef {
                z: None,
                rl: Some(_),
            }) => Ok(None),
            _ => Err("multiplier must define exactly one of `z` or `rl`".into()),
        }
    }

    pub fn multiplier_rl(&self) -> Result<Option<RLMultiplier>, String> {
        match &self.multiplier {
            Some(MultiplierDef {
                rl: Some(def),
                z: None,
            }) => Ok(Some(
                RLMultiplier::new(def.zeros.clone(), def.poles.clone(), def.rc)
                    .map_err(|e| e.to_string())?,
            )),
            Some(MultiplierDef { z: None, rl: None }) => {
                Err("multiplier must define exactly one of `z` or `rl`".into())
            }
            Some(MultiplierDef {
                z: Some(_),
                rl: Some(_),
            }) => Err("multiplier must define exactly one of `z` or `rl`".into()),
            _ => Ok(None),
        }
    }

    pub fn pulse(&self) -> Result<Option<PulseInput>, String> {
        self.input
            .as_ref()
            .map(|p| PulseInput::new(p.amplitude, p.t_on, p.t_off).map_err(|e| e.to_string()))
            .transpose()
    }

    pub fn sweep_config(
        &self,
        omega_range: Option<(f64, f64)>,
        eps: Option<f64>,
    ) -> Result<SweepConfig, String> {
        let defaults = SweepConfig::default();
        let def = self.sweep.as_ref();
        let omega_min = omega_range
            .map(|r| r.0)
            .or(def.and_then(|d| d.omega_min))
            .unwrap_or(defaults.omega_min);
        let omega_max = omega_range
            .map(|r| r.1)
            .or(def.and_then(|d| d.omega_max))
            .unwrap_or(defaults.omega_max);
        let ppd = def
            .and_then(|d| d.points_per_decade)
            .unwrap_or(defaults.points_per_decade);
        let refine = def
            .and_then(|d| d.refine_tol)
            .unwrap_or(defaults.refine_tol);
        let epsilon = eps
            .or(def.and_then(|d| d.epsilon))
            .unwrap_or(defaults.epsilon_margin);
        SweepConfig::new(omega_min, omega_max, ppd, refine, epsilon).map_err(|e| e.to_string())
    }

    pub fn sim_config(&self, h: Option<f64>, t_end: Option<f64>) -> SimConfig {
        let defaults = SimConfig::default();
        let def = self.sim.as_ref();
        SimConfig {
            h: h.or(def.and_then(|d| d.h)).unwrap_or(defaults.h),
            t_end: t_end
                .or(def.and_then(|d| d.t_end))
                .unwrap_or(defaults.t_end),
            loop_tol: def.and_then(|d| d.loop_tol).unwrap_or(defaults.loop_tol),
            ..defaults
        }
    }
}

impl ClassDef {
    fn to_spec(&self, alpha_override: Option<f64>) -> ClassSpec {
        let term = |t: &TermDef| ClassTerm::new(t.gain, t.pole, alpha_override.unwrap_or(t.alpha));
        match self {
            ClassDef::Zf1 { offset, terms } => ClassSpec::Zf1 {
                offset: *offset,
                terms: terms.iter().map(term).collect(),
            },
            ClassDef::Zf2 {
                zero,
                pole,
                alpha,
                offset,
                terms,
            } => ClassSpec::Zf2 {
                zero: *zero,
                pole: *pole,
                alpha: alpha_override.unwrap_or(*alpha),
                offset: *offset,
                terms: terms.iter().map(term).collect(),
            },
            ClassDef::Zf3 {
                gain,
                zero,
                pole_a,
                pole_c,
                alpha,
                offset,
                terms,
            } => ClassSpec::Zf3 {
                gain: *gain,
                zero: *zero,
                pole_a: *pole_a,
                pole_c: *pole_c,
                alpha: alpha_override.unwrap_or(*alpha),
                offset: *offset,
                terms: terms.iter().map(term).collect(),
            },
            ClassDef::Gzf {
                gain,
                zeros,
                poles,
                alpha,
                terms,
            } => ClassSpec::Gzf {
                gain: *gain,
                zeros: zeros.clone(),
                poles: poles.clone(),
                alpha: alpha_override.unwrap_or(*alpha),
                terms: terms.iter().map(term).collect(),
            },
        }
    }
}
