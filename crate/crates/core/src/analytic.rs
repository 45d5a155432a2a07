//! Closed-form limits: the ultra-relativistic expansion, the d-dimensional
//! critical temperature and condensed fraction, the relativistic density of
//! states, and the low-temperature condensate asymptotics.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special::{gamma_half, zeta_int, ZETA_3};
use crate::types::ChargeDensities;

/// Spatial dimension `d >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimension(u32);

impl Dimension {
    pub const THREE: Dimension = Dimension(3);

    pub fn new(d: u32) -> Result<Self> {
        if d < 3 {
            return Err(Error::UnsupportedDimension { d });
        }
        Ok(Self(d))
    }

    pub fn get(&self) -> u32 {
        self.0
    }
}

fn thermal_pair(t: f64, mu: f64) -> (f64, f64) {
    (ZETA_3 * t.powi(3) / (PI * PI), mu * t * t / 6.0)
}

/// First-order expansion in `mu` valid for `t >> 1`:
/// `n1,2 = zeta(3) t^3 / pi^2 +- mu t^2 / 6`, `q~ = mu t^2 / 3`.
///
/// Fails when the expansion drives a density negative.
pub fn ur_densities(t: f64, mu: f64) -> Result<ChargeDensities> {
    let (lead, shift) = thermal_pair(t, mu);
    let (n1, n2) = (lead + shift, lead - shift);
    if n1 < 0.0 || n2 < 0.0 {
        return Err(Error::AsymptoteOutOfRange { denominator: n1.min(n2) });
    }
    ChargeDensities::new(n1, n2)
}

/// `sqrt(3 q/m)`.
pub fn ur_critical_temperature(q_over_m: f64) -> f64 {
    (3.0 * q_over_m).sqrt()
}

/// Ultra-relativistic `n2/n1` at the transition. Tends to `-1` as `t_c -> 0`,
/// outside the regime where the expansion holds.
pub fn ur_density_ratio(t_c: f64, mu: f64) -> f64 {
    let (lead, shift) = thermal_pair(t_c, mu);
    (lead - shift) / (lead + shift)
}

/// `2 pi^{d/2} / ((2 pi)^d Gamma(d/2))`, the angular part of `d^d k / (2 pi)^d`.
fn angular_factor(d: u32) -> Result<f64> {
    let d_f = d as f64;
    Ok(2.0 * PI.powf(0.5 * d_f) / ((2.0 * PI).powi(d as i32) * gamma_half(0.5 * d_f)?))
}

/// Density of states of `H = sqrt(k^2 + 1)` in `d` dimensions at energy `eps >= 1`.
pub fn density_of_states(eps: f64, dim: Dimension) -> Result<f64> {
    if !(eps >= 1.0) {
        return Err(Error::BelowMassGap { eps });
    }
    let d = dim.get();
    let radial = if d == 3 { (eps * eps - 1.0).sqrt() } else { (eps * eps - 1.0).powf(0.5 * (d as f64 - 2.0)) };
    Ok(angular_factor(d)? * eps * radial)
}

/// Ultra-relativistic critical temperature in `d` dimensions:
/// `[(2 pi)^d Gamma(d/2) / (4 pi^{d/2} Gamma(d) zeta(d-1)) q/m]^{1/(d-1)}`.
pub fn ddim_critical_temperature(q_over_m: f64, dim: Dimension) -> Result<f64> {
    if !(q_over_m > 0.0) || !q_over_m.is_finite() {
        return Err(Error::InvalidArgument(format!("q/m must be positive, got {q_over_m}")));
    }
    let d = dim.get();
    let d_f = d as f64;
    let prefactor = (2.0 * PI).powi(d as i32) * gamma_half(0.5 * d_f)?
        / (4.0 * PI.powf(0.5 * d_f) * gamma_half(d_f)? * zeta_int(d - 1)?);
    Ok((prefactor * q_over_m).powf(1.0 / (d_f - 1.0)))
}

/// `1 - (t/t_c)^{d-1}` for `0 <= t <= t_c`.
pub fn ur_condensed_fraction(t: f64, t_c: f64, dim: Dimension) -> Result<f64> {
    if !(t_c > 0.0) || !(t >= 0.0) {
        return Err(Error::InvalidArgument(format!("need 0 <= t and t_c > 0, got t = {t}, t_c = {t_c}")));
    }
    if t > t_c {
        return Err(Error::AboveCritical { q: f64::NAN, t, thermal: f64::NAN });
    }
    Ok(1.0 - (t / t_c).powi(dim.get() as i32 - 1))
}

/// Low-temperature chemical potential `1 - t ln((N0 + 1)/N0)` for a
/// condensate mode holding net occupation `N0 = q0_occ`.
pub fn low_t_mu_asymptote(q0_occ: f64, t: f64) -> f64 {
    1.0 - t * (1.0 / q0_occ).ln_1p()
}

/// Low-temperature antiparticle occupation of the condensate mode,
/// `(N0 + 1) / (N0 (e^{2/t} - 1) - 1)`.
pub fn low_t_condensate_antiparticles(q0_occ: f64, t: f64) -> Result<f64> {
    if !(q0_occ > 0.0) || !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("need q0_occ > 0 and t > 0, got {q0_occ}, {t}")));
    }
    let denominator = q0_occ * (2.0 / t).exp_m1() - 1.0;
    if !(denominator > 0.0) {
        return Err(Error::AsymptoteOutOfRange { denominator });
    }
    Ok((q0_occ + 1.0) / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn d(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn ur_density_examples() {
        let sym = ur_densities(7.0, 0.0).unwrap();
        assert_eq!(sym.n1(), sym.n2());
        assert_relative_eq!(sym.n1(), ZETA_3 * 343.0 / (PI * PI), max_relative = 1e-15);
        assert_eq!(sym.q_tilde(), 0.0);
        assert_relative_eq!(ur_densities(2.0, 1.0).unwrap().q_tilde(), 4.0 / 3.0, max_relative = 1e-15);
        assert!(ur_densities(1.0, 1.0).is_err());
    }

    #[test]
    fn ur_critical_temperature_examples() {
        assert_relative_eq!(ur_critical_temperature(3.0), 3.0, max_relative = 1e-15);
        assert_relative_eq!(ur_critical_temperature(1.0 / 3.0), 1.0, max_relative = 1e-15);
        assert_relative_eq!(ur_critical_temperature(100.0), 17.3205, epsilon = 1e-4);
    }

    #[test]
    fn ur_density_ratio_limits() {
        assert!(1.0 - ur_density_ratio(1e6, 1.0) < 1e-5);
        assert!(ur_density_ratio(1e-6, 1.0) + 1.0 < 1e-5);
        // n1-part equal to twice the shift: ratio (a - b)/(a + b) with a = 2b
        let t = PI * PI / (3.0 * ZETA_3);
        assert_relative_eq!(ur_density_ratio(t, 1.0), 1.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn density_of_states_examples() {
        assert_eq!(density_of_states(1.0, d(3)).unwrap(), 0.0);
        let expected = 2f64.sqrt() / (2.0 * PI * PI);
        assert_relative_eq!(density_of_states(2f64.sqrt(), d(3)).unwrap(), expected, max_relative = 1e-14);
        assert!(matches!(density_of_states(0.5, d(3)), Err(Error::BelowMassGap { .. })));
    }

    #[test]
    fn ddim_reduces_to_three_dimensional_formula() {
        for q in [1e-3, 0.5, 3.0, 100.0, 1e6] {
            let a = ddim_critical_temperature(q, d(3)).unwrap();
            assert_relative_eq!(a, ur_critical_temperature(q), max_relative = 1e-12);
        }
    }

    #[test]
    fn ddim_four_dimensions() {
        let expected = (2.0 * PI * PI / (3.0 * ZETA_3)).powf(1.0 / 3.0);
        assert_relative_eq!(ddim_critical_temperature(1.0, d(4)).unwrap(), expected, max_relative = 1e-14);
        assert_relative_eq!(expected, 1.76236, epsilon = 1e-5);
    }

    #[test]
    fn two_dimensions_rejected() {
        assert_eq!(Dimension::new(2), Err(Error::UnsupportedDimension { d: 2 }));
        assert!(ddim_critical_temperature(-1.0, d(3)).is_err());
    }

    #[test]
    fn condensed_fraction_examples() {
        for n in 3..8 {
            assert_eq!(ur_condensed_fraction(2.0, 2.0, d(n)).unwrap(), 0.0);
        }
        assert_relative_eq!(ur_condensed_fraction(1.0, 2.0, d(3)).unwrap(), 0.75);
        assert_relative_eq!(ur_condensed_fraction(1.0, 2.0, d(4)).unwrap(), 0.875);
        assert!(ur_condensed_fraction(2.5, 2.0, d(3)).is_err());
    }

    #[test]
    fn low_temperature_asymptotes() {
        assert_relative_eq!(low_t_mu_asymptote(1e300, 0.3), 1.0);
        assert_relative_eq!(low_t_mu_asymptote(1.0, 0.01), 1.0 - 0.01 * 2f64.ln(), max_relative = 1e-15);
        assert_relative_eq!(low_t_mu_asymptote(1.0, 0.01), 0.993069, epsilon = 1e-6);
        let e4 = 4f64.exp();
        assert_relative_eq!(low_t_condensate_antiparticles(1.0, 0.5).unwrap(), 2.0 / (e4 - 2.0), max_relative = 1e-14);
        assert_eq!(low_t_condensate_antiparticles(1.0, 1e-4).unwrap(), 0.0);
        // N0 (e^{2/t} - 1) <= 1 once t is large enough
        assert!(matches!(low_t_condensate_antiparticles(0.01, 10.0), Err(Error::AsymptoteOutOfRange { .. })));
    }

    proptest! {
        #[test]
        fn density_of_states_jacobian(k in 1e-3f64..50.0) {
            // rho(eps) d eps = k^2 dk / (2 pi^2) with eps = sqrt(k^2 + 1), d eps/dk = k/eps
            let eps = (k * k + 1.0).sqrt();
            let lhs = density_of_states(eps, Dimension::THREE).unwrap() * k / eps;
            let rhs = k * k / (2.0 * PI * PI);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        }

        #[test]
        fn ddim_three_matches_ur(q in 1e-6f64..1e6) {
            let a = ddim_critical_temperature(q, Dimension::THREE).unwrap();
            prop_assert!((a / ur_critical_temperature(q) - 1.0).abs() < 1e-12);
        }
    }
}
