//! Equation of state of the ideal relativistic Bose gas with conserved
//! charge: particle and antiparticle densities, chemical potential and
//! critical-temperature inversion, condensed fraction, closed-form limits,
//! and a finite-volume mode-sum oracle.
//!
//! Everything works in units of the boson mass `m` (with `hbar = c = k_B = 1`):
//! temperatures and chemical potentials are `T/m` and `mu/m`, momenta `k/m`,
//! and densities `q/m^3`.
//!
//! ```
//! use relbec_core::{critical_temperature, ur_critical_temperature, SolverConfig};
//!
//! let tc = critical_temperature(100.0, &SolverConfig::default()).unwrap();
//! assert!((tc / ur_critical_temperature(100.0) - 1.0).abs() < 0.01);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod finite_volume;
pub mod quadrature;
mod roots;
mod shells;
pub mod solver;
pub mod special;
pub mod statistics;
pub mod types;

pub use analytic::{
    ddim_critical_temperature, density_of_states, low_t_condensate_antiparticles, low_t_mu_asymptote,
    ur_condensed_fraction, ur_critical_temperature, ur_densities, ur_density_ratio, Dimension,
};
pub use error::{Error, Result};
pub use finite_volume::{condensate_mode, mode_sum, solve_condensate_mu, CondensateMode, ModeSumResult};
pub use quadrature::{
    integrate_semi_infinite, net_thermal_charge, thermal_charge_density, Estimate, ExponentialEnvelope,
    QuadratureConfig,
};
pub use solver::{
    condensed_solution, critical_temperature, density_ratio, solve_mu, solve_state, universal_curves, GasSolution,
    SolverConfig,
};
pub use special::{gamma_half, zeta_int};
pub use statistics::{charge_integrand, dispersions, momentum_profile, occupation, DispersionPair};
pub use types::{make_phase_point, BoxSpec, ChargeDensities, CriticalPoint, MomentumProfile, PhasePoint};
