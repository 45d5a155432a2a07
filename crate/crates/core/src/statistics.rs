//! Pointwise kernels: dispersions, Bose-Einstein occupations and the
//! charge-density integrand at a single momentum.

use crate::error::{Error, Result};
use crate::types::{MomentumProfile, PhasePoint};

/// Above this reduced energy `e^x - 1` is replaced by `e^x`.
const OVERFLOW_EXPONENT: f64 = 700.0;
/// Below this reduced energy the occupation uses its Laurent expansion.
const LAURENT_EXPONENT: f64 = 1e-8;

/// Particle and antiparticle energies at one momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPair {
    pub omega: f64,
    pub omega_bar: f64,
}

/// `omega = sqrt(k^2+1) - mu`, `omega_bar = sqrt(k^2+1) + mu`.
///
/// Both are evaluated as `(sqrt(k^2+1) - 1) + (1 -/+ mu)` so that neither
/// loses precision when `k -> 0` and `|mu| -> 1`.
pub fn dispersions(k: f64, mu: f64) -> DispersionPair {
    let k2 = k * k;
    let kinetic = k2 / ((k2 + 1.0).sqrt() + 1.0);
    DispersionPair { omega: kinetic + (1.0 - mu), omega_bar: kinetic + (1.0 + mu) }
}

/// Bose factor `1/(e^x - 1)` for `x > 0`.
pub(crate) fn bose(x: f64) -> f64 {
    if x > OVERFLOW_EXPONENT {
        (-x).exp()
    } else if x < LAURENT_EXPONENT {
        1.0 / x - 0.5 + x / 12.0
    } else {
        1.0 / x.exp_m1()
    }
}

/// Bose-Einstein occupation `1/(e^{energy/t} - 1)`.
pub fn occupation(energy: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTemperature { t });
    }
    if energy < 0.0 {
        return Err(Error::InvalidArgument(format!("negative energy {energy}")));
    }
    if energy == 0.0 {
        return Err(Error::GaplessMode);
    }
    Ok(bose(energy / t))
}

/// `k^2 / (e^{omega/t} - 1)`, finite as `k, omega -> 0` together.
///
/// When `omega` vanishes only through the kinetic term (`mu = 1`), the ratio
/// `k^2/omega` tends to 2 and the weight to `2t`.
fn weighted_bose(k: f64, omega: f64, t: f64) -> f64 {
    let k2 = k * k;
    let x = omega / t;
    if x < LAURENT_EXPONENT {
        let k2_over_omega = if omega == 0.0 { 2.0 } else { k2 / omega };
        t * k2_over_omega - 0.5 * k2 + k2 * x / 12.0
    } else {
        k2 * bose(x)
    }
}

/// `k^2 n_1(k)`: the particle occupation with the three-dimensional measure.
pub fn particle_weight(k: f64, phase: &PhasePoint) -> f64 {
    weighted_bose(k, dispersions(k, phase.mu()).omega, phase.t())
}

/// `k^2 n_2(k)`: the antiparticle occupation with the three-dimensional measure.
pub fn antiparticle_weight(k: f64, phase: &PhasePoint) -> f64 {
    weighted_bose(k, dispersions(k, phase.mu()).omega_bar, phase.t())
}

/// `k^2 [n_1(k) - n_2(k)]`, the integrand whose integral times `1/(2 pi^2)`
/// is the thermal charge density. At `k = 0`, `mu = +-1` this returns the
/// limit `+-2t`.
pub fn charge_integrand(k: f64, phase: &PhasePoint) -> f64 {
    let DispersionPair { omega, omega_bar } = dispersions(k, phase.mu());
    let t = phase.t();
    weighted_bose(k, omega, t) - weighted_bose(k, omega_bar, t)
}

/// Samples the `k^2`-weighted occupations on `samples` uniform points of `[0, k_max]`.
pub fn momentum_profile(phase: &PhasePoint, k_max: f64, samples: usize) -> Result<MomentumProfile> {
    if !(k_max > 0.0) || !k_max.is_finite() {
        return Err(Error::InvalidArgument(format!("k_max must be positive, got {k_max}")));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 samples, got {samples}")));
    }
    let step = k_max / (samples - 1) as f64;
    let k_grid: Vec<f64> = (0..samples).map(|i| i as f64 * step).collect();
    let n1_of_k = k_grid.iter().map(|&k| particle_weight(k, phase)).collect();
    let n2_of_k = k_grid.iter().map(|&k| antiparticle_weight(k, phase)).collect();
    Ok(MomentumProfile { k_grid, n1_of_k, n2_of_k })
}
