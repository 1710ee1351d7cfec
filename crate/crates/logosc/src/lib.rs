//! Log-periodic time-dependent harmonic oscillators, solved exactly.
//!
//! Three oscillator families share omega(t) = omega0*t0/t but split the time
//! dependence differently between mass and stiffness; all of them oscillate
//! with a phase that advances like ln t. For each family this crate provides
//!
//! - the coefficient functions m(t), k(t), omega(t), gamma(t)
//!   ([`oscillator`]),
//! - the positive solution rho(t) of the auxiliary nonlinear equation, in
//!   closed form and by adaptive integration ([`pinney`]),
//! - the exact Schrodinger wavefunctions psi_n(q, t), their accumulated
//!   phases, and coherent-state dynamics ([`quantum`]),
//! - uncertainty products and coordinate-momentum correlations, with a
//!   quadrature oracle to back every closed form ([`observables`]),
//! - classical trajectories, energies, envelopes, and phase diagrams
//!   ([`classical`]),
//! - CSV/JSON reporting, a flat-file run configuration, and an end-to-end
//!   verification gate suite ([`report`], [`config`], [`verify`], [`cli`]).
//!
//! Every closed form is cross-checked against an independent numeric route:
//! rho against the integrator, wavefunctions against quadrature
//! normalization and a finite-difference Schrodinger defect, observables
//! against brute-force moments, trajectories against the equation of
//! motion. The `verify` CLI subcommand (and the `acceptance` test target)
//! runs the whole battery.
//!
//! ```
//! use logosc::oscillator::{Family, OscillatorSpec};
//! use logosc::{pinney, quantum};
//!
//! let spec = OscillatorSpec::new(Family::CaseA, 1.0, 100.0, 1.0)?;
//! let rho = pinney::analytic_rho(&spec)?;
//! let sample = quantum::psi_n(&rho, 0, 0.0, 1.0)?;
//! assert!((sample.value.re - (10.0 / std::f64::consts::PI).powf(0.25)).abs() < 1e-12);
//! # Ok::<(), logosc::Error>(())
//! ```
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod classical;
pub mod cli;
pub mod config;
mod error;
pub mod observables;
pub mod ode;
pub mod oscillator;
pub mod pinney;
pub mod quad;
pub mod quantum;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
