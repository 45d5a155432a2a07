//! Inversion of the equation of state: chemical potential from charge,
//! critical temperature from the condensation condition `|mu| = 1`, and the
//! condensate below it.

use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::{net_thermal_charge, thermal_charge_density, QuadratureConfig};
use crate::roots::{brent, Tolerance};
use crate::types::{ChargeDensities, CriticalPoint, PhasePoint};

/// zeta(3/2), for the non-relativistic critical temperature estimate.
const ZETA_3_2: f64 = 2.612_375_348_685_488;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Absolute tolerance on `mu/m`.
    pub mu_tol: f64,
    /// Relative tolerance on `T_c/m`.
    pub t_tol: f64,
    pub max_iters: u32,
    pub quadrature: QuadratureConfig,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { mu_tol: 1e-10, t_tol: 1e-8, max_iters: 200, quadrature: QuadratureConfig::default() }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu_tol > 0.0) || !(self.t_tol > 0.0) || self.max_iters < 10 {
            return Err(Error::InvalidArgument(format!("invalid solver config {self:?}")));
        }
        self.quadrature.validate()
    }

    /// Relative charge mismatch treated as "at the transition".
    fn critical_slack(&self) -> f64 {
        10.0 * self.t_tol
    }

    /// Relative charge mismatch below which the condensate is snapped to zero.
    fn condensate_floor(&self) -> f64 {
        10.0 * self.quadrature.rel_tol
    }
}

/// The state of the gas at given total charge and temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasSolution {
    pub phase: PhasePoint,
    pub densities: ChargeDensities,
    /// Total net charge `q/m^3`.
    pub charge: f64,
    /// Condensate charge `q0/m^3`.
    pub q0: f64,
    /// `|Phi|^2 / m^2 = q0 / 2`.
    pub order_param_sq: f64,
}

impl GasSolution {
    pub fn condensed_fraction(&self) -> f64 {
        self.q0 / self.charge
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositiveTemperature { t });
    }
    Ok(())
}

fn thermal_capacity(t: f64, config: &SolverConfig) -> Result<f64> {
    net_thermal_charge(&PhasePoint::new(t, 1.0)?, &config.quadrature)
}

/// Chemical potential `mu/m` at which the thermal charge equals `q` at temperature `t`.
///
/// Negative `q` is handled by charge conjugation. Fails with
/// [`Error::BelowCritical`] when `|q|` exceeds what the thermal modes can
/// carry at `mu = +-1`.
pub fn solve_mu(q: f64, t: f64, config: &SolverConfig) -> Result<f64> {
    config.validate()?;
    check_temperature(t)?;
    if !q.is_finite() {
        return Err(Error::InvalidArgument(format!("charge must be finite, got {q}")));
    }
    if q == 0.0 {
        return Ok(0.0);
    }
    if q < 0.0 {
        return solve_mu(-q, t, config).map(|mu| -mu);
    }
    let capacity = thermal_capacity(t, config)?;
    if q >= capacity {
        return Err(Error::BelowCritical { q, t, capacity });
    }
    let residual = |mu: f64| Ok(net_thermal_charge(&PhasePoint::new(t, mu)?, &config.quadrature)? - q);
    let tol = Tolerance { x: 0.5 * config.mu_tol, f: 0.0, max_iters: config.max_iters };
    brent(residual, 0.0, 1.0, -q, capacity - q, tol, "solve_mu")
}

/// Non-relativistic estimate `2 pi (q / zeta(3/2))^{2/3}`.
fn nonrelativistic_tc(q: f64) -> f64 {
    2.0 * PI * (q / ZETA_3_2).powf(2.0 / 3.0)
}

/// Critical temperature `T_c/m` at which `q~(T_c, mu = 1) = q`.
///
/// `q = 0` gives `T_c = 0`. Negative charges are rejected; by charge
/// conjugation their critical temperature is that of `-q`.
pub fn critical_temperature(q: f64, config: &SolverConfig) -> Result<f64> {
    config.validate()?;
    if q == 0.0 {
        return Ok(0.0);
    }
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::InvalidArgument(format!("critical temperature needs q > 0, got {q}")));
    }
    let residual = |t: f64| Ok(thermal_capacity(t, config)? - q);
    let nr = nonrelativistic_tc(q);
    let ur = (3.0 * q).sqrt();
    let (mut lo, mut hi) = (nr.min(ur), 2.0 * nr.max(ur));
    let mut f_lo = residual(lo)?;
    let mut f_hi = residual(hi)?;
    let mut expansions = 0;
    while f_lo > 0.0 || f_hi < 0.0 {
        expansions += 1;
        if expansions > config.max_iters {
            return Err(Error::NonConvergence {
                operation: "critical_temperature",
                detail: format!("could not bracket T_c for q = {q}"),
            });
        }
        if f_lo > 0.0 {
            hi = lo;
            f_hi = f_lo;
            lo *= 0.5;
            f_lo = residual(lo)?;
        } else {
            lo = hi;
            f_lo = f_hi;
            hi *= 2.0;
            f_hi = residual(hi)?;
        }
    }
    let tol = Tolerance { x: 0.5 * config.t_tol * lo, f: 0.0, max_iters: config.max_iters };
    brent(residual, lo, hi, f_lo, f_hi, tol, "critical_temperature")
}

/// Condensate and thermal cloud at charge `q > 0` and temperature `t <= T_c(q)`.
///
/// The chemical potential is pinned at `mu = 1`; the condensate carries the
/// charge the thermal modes cannot. A tiny excess of thermal charge within
/// the critical-temperature tolerance is clamped to an empty condensate.
pub fn condensed_solution(q: f64, t: f64, config: &SolverConfig) -> Result<GasSolution> {
    config.validate()?;
    check_temperature(t)?;
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::InvalidArgument(format!("condensed solution needs q > 0, got {q}")));
    }
    let phase = PhasePoint::new(t, 1.0)?;
    let densities = thermal_charge_density(&phase, &config.quadrature)?;
    let thermal = densities.q_tilde();
    if thermal > q * (1.0 + config.critical_slack()) {
        return Err(Error::AboveCritical { q, t, thermal });
    }
    let mut q0 = q - thermal;
    if q0.abs() <= config.condensate_floor() * q || q0 < 0.0 {
        q0 = 0.0;
    }
    Ok(GasSolution { phase, densities, charge: q, q0, order_param_sq: 0.5 * q0 })
}

/// Full solution at `(q, t)`: above `T_c` the chemical potential is solved
/// for and the condensate is empty, at or below it [`condensed_solution`] applies.
pub fn solve_state(q: f64, t: f64, config: &SolverConfig) -> Result<GasSolution> {
    match solve_mu(q, t, config) {
        Ok(mu) => {
            let phase = PhasePoint::new(t, mu)?;
            let densities = thermal_charge_density(&phase, &config.quadrature)?;
            Ok(GasSolution { phase, densities, charge: q, q0: 0.0, order_param_sq: 0.0 })
        }
        Err(Error::BelowCritical { .. }) => condensed_solution(q, t, config),
        Err(e) => Err(e),
    }
}

/// Antiparticle to particle ratio `n2/n1` of the thermal modes at `(q, t)`.
///
/// Above `T_c` the chemical potential is solved from `q`; at and below `T_c`
/// it is pinned at `mu = 1` and the ratio refers to the thermal cloud.
pub fn density_ratio(q: f64, t: f64, config: &SolverConfig) -> Result<f64> {
    if !(q >= 0.0) || !q.is_finite() {
        return Err(Error::InvalidArgument(format!("density ratio needs q >= 0, got {q}")));
    }
    let mu = match solve_mu(q, t, config) {
        Ok(mu) => mu,
        Err(Error::BelowCritical { .. }) => 1.0,
        Err(e) => return Err(e),
    };
    Ok(thermal_charge_density(&PhasePoint::new(t, mu)?, &config.quadrature)?.ratio())
}

/// Log-spaced grid of `points` values on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| {
            if i == 0 {
                lo
            } else if i + 1 == points {
                hi
            } else {
                (a + (b - a) * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

/// Critical temperature and transition-point antiparticle ratio on a log-spaced charge grid.
pub fn universal_curves(q_min: f64, q_max: f64, points: usize, config: &SolverConfig) -> Result<Vec<CriticalPoint>> {
    if !(q_min > 0.0) || !(q_max > q_min) || !q_max.is_finite() {
        return Err(Error::InvalidArgument(format!("need 0 < q_min < q_max, got [{q_min}, {q_max}]")));
    }
    if points < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 points, got {points}")));
    }
    log_grid(q_min, q_max, points)
        .into_par_iter()
        .map(|q| {
            let t_c = critical_temperature(q, config)?;
            let densities = thermal_charge_density(&PhasePoint::new(t_c, 1.0)?, &config.quadrature)?;
            Ok(CriticalPoint { q, t_c, ratio: densities.ratio() })
        })
        .collect()
}
