//! L2 input-output stability analysis of fractional-order Lur'e systems.
//!
//! A Lur'e system is the negative-feedback interconnection of a linear
//! time-invariant block in the forward path with a memoryless
//! nonlinearity in the feedback path. This crate analyzes the case where
//! the linear block is a commensurate fractional-order transfer function
//! G(s^alpha) with 0 < alpha <= 1:
//!
//! - [`poly`] — real polynomial arithmetic in the commensurate variable
//!   w = s^alpha, simultaneous-iteration root finding, coprime reduction;
//! - [`tf`] — commensurate transfer functions, Matignon BIBO test, L2
//!   admissibility, dc values, pseudo-state realizations;
//! - [`freq`] — Nyquist-locus sweeps, refined extremum search of the
//!   real part, winding numbers;
//! - [`criteria`] — circle, Popov, Zames-Falb, generalized Zames-Falb,
//!   RL/RC skeleton, and small-gain certificates;
//! - [`classes`] — constructors for families of plants that are certified
//!   stable by the multiplier criteria;
//! - [`sim`] — Adams predictor-corrector solver for Caputo fractional
//!   differential equations and closed-loop time-domain validation.
//!
//! ```
//! use lurefrac::poly::RealPoly;
//! use lurefrac::tf::CommensurateTF;
//!
//! // G(s^0.7) = 6 / ((s^0.7 + 1)(s^0.7 + 2)(s^0.7 + 3))
//! let g = CommensurateTF::new(
//!     RealPoly::constant(6.0),
//!     RealPoly::new(vec![6.0, 11.0, 6.0, 1.0]),
//!     0.7,
//! )?;
//! let report = g.stability_report()?;
//! assert!(report.bibo && report.l2_finite);
//! # Ok::<(), lurefrac::Error>(())
//! ```

pub mod classes;
pub mod criteria;
pub mod error;
pub mod freq;
pub mod poly;
pub mod sim;
pub mod special;
pub mod tf;

pub use error::{Error, Result};
pub use num_complex::Complex64;
