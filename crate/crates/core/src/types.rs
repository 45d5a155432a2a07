//! Scaled-unit value types shared by every module.
//!
//! All quantities are measured in units of the boson mass: temperatures and
//! chemical potentials as `T/m` and `mu/m`, momenta as `k/m`, densities as
//! `q/m^3`.

use crate::error::{Error, Result};

/// A thermodynamic state `(T/m, mu/m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    t: f64,
    mu: f64,
}

impl PhasePoint {
    /// Validates `t > 0` and `|mu| <= 1`. The boundary `|mu| = 1` is the
    /// condensation point and is accepted.
    pub fn new(t: f64, mu: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::NonPositiveTemperature { t });
        }
        if !(mu.abs() <= 1.0) {
            return Err(Error::UnphysicalMu { mu });
        }
        Ok(Self { t, mu })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// The charge-conjugated state `(t, -mu)`.
    pub fn conjugate(&self) -> Self {
        Self { t: self.t, mu: -self.mu }
    }

    pub fn is_critical(&self) -> bool {
        self.mu.abs() == 1.0
    }
}

/// Shorthand for [`PhasePoint::new`].
pub fn make_phase_point(t: f64, mu: f64) -> Result<PhasePoint> {
    PhasePoint::new(t, mu)
}

/// Particle, antiparticle and net thermal charge densities in units of `m^3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeDensities {
    n1: f64,
    n2: f64,
    q_tilde: f64,
}

impl ChargeDensities {
    /// Builds the triple; the net charge is always `n1 - n2`.
    pub fn new(n1: f64, n2: f64) -> Result<Self> {
        if !(n1 >= 0.0) || !(n2 >= 0.0) {
            return Err(Error::InvalidArgument(format!("densities must be non-negative, got n1 = {n1}, n2 = {n2}")));
        }
        Ok(Self { n1, n2, q_tilde: n1 - n2 })
    }

    pub fn n1(&self) -> f64 {
        self.n1
    }

    pub fn n2(&self) -> f64 {
        self.n2
    }

    pub fn q_tilde(&self) -> f64 {
        self.q_tilde
    }

    /// Antiparticle to particle ratio `n2/n1`.
    pub fn ratio(&self) -> f64 {
        self.n2 / self.n1
    }
}

/// A point on the condensation line together with the antiparticle ratio there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub q: f64,
    pub t_c: f64,
    pub ratio: f64,
}

/// Sampled `k^2`-weighted occupations on a uniform momentum grid.
///
/// The `1/(2 pi^2)` prefactor is not included, so the trapezoidal integral of
/// `n1_of_k - n2_of_k` times `1/(2 pi^2)` approximates the thermal charge.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumProfile {
    pub k_grid: Vec<f64>,
    pub n1_of_k: Vec<f64>,
    pub n2_of_k: Vec<f64>,
}

/// Periodic cubic box of side `L m` with a spherical mode cutoff `|n| <= mode_cutoff`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxSpec {
    box_length: f64,
    mode_cutoff: u32,
    tail_tolerance: f64,
}

impl BoxSpec {
    pub fn new(box_length: f64, mode_cutoff: u32, tail_tolerance: f64) -> Result<Self> {
        if !(box_length > 0.0) || !box_length.is_finite() {
            return Err(Error::InvalidArgument(format!("box length must be positive, got {box_length}")));
        }
        if mode_cutoff < 1 {
            return Err(Error::InvalidArgument("mode cutoff must be at least 1".into()));
        }
        if !(tail_tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!("tail tolerance must be positive, got {tail_tolerance}")));
        }
        Ok(Self { box_length, mode_cutoff, tail_tolerance })
    }

    /// Smallest cutoff whose analytic tail bound at `phase` is below `tail_tolerance`.
    pub fn for_phase(box_length: f64, phase: &PhasePoint, tail_tolerance: f64) -> Result<Self> {
        let probe = Self::new(box_length, 1, tail_tolerance)?;
        let cutoff = crate::finite_volume::minimal_cutoff(&probe, phase)?;
        Self::new(box_length, cutoff, tail_tolerance)
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn mode_cutoff(&self) -> u32 {
        self.mode_cutoff
    }

    pub fn tail_tolerance(&self) -> f64 {
        self.tail_tolerance
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn phase_point_construction() {
        let p = PhasePoint::new(1.0, 0.5).unwrap();
        assert_eq!((p.t(), p.mu()), (1.0, 0.5));
        assert_eq!(PhasePoint::new(1.0, 1.2), Err(Error::UnphysicalMu { mu: 1.2 }));
        assert_eq!(PhasePoint::new(0.0, 0.0), Err(Error::NonPositiveTemperature { t: 0.0 }));
        assert!(PhasePoint::new(1.0, f64::NAN).is_err());
        assert!(PhasePoint::new(f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn condensation_point_is_accepted() {
        assert!(PhasePoint::new(0.3, 1.0).unwrap().is_critical());
        assert!(PhasePoint::new(0.3, -1.0).unwrap().is_critical());
    }

    #[test]
    fn densities_net_charge_is_difference() {
        let d = ChargeDensities::new(0.75, 0.25).unwrap();
        assert_eq!(d.q_tilde(), 0.5);
        assert!(ChargeDensities::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn box_spec_validation() {
        assert!(BoxSpec::new(0.0, 4, 1e-6).is_err());
        assert!(BoxSpec::new(10.0, 0, 1e-6).is_err());
        assert!(BoxSpec::new(10.0, 4, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn accepted_points_revalidate(t in 1e-6f64..1e3, mu in -1.5f64..1.5) {
            if let Ok(p) = PhasePoint::new(t, mu) {
                prop_assert_eq!(PhasePoint::new(p.t(), p.mu()), Ok(p));
            }
        }

        #[test]
        fn sign_symmetric_acceptance(t in -1.0f64..10.0, mu in -1.5f64..1.5) {
            prop_assert_eq!(PhasePoint::new(t, mu).is_ok(), PhasePoint::new(t, -mu).is_ok());
        }
    }
}
