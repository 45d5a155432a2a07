//! Brute-force mode sums in a periodic cubic box, the condensate mode, and
//! its exact inversion at low temperature.
//!
//! Modes are `k = (2 pi / L) n` for integer vectors `0 < |n| <= N`. They are
//! grouped into shells of equal `|n|^2` and summed in increasing `|n|^2`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::roots::{brent, Tolerance};
use crate::shells::{shell_counts, MAX_SHELL};
use crate::statistics::{bose, dispersions};
use crate::types::{BoxSpec, PhasePoint};

/// Finite-volume densities in units of `m^3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSumResult {
    pub q_tilde_fv: f64,
    pub n1_fv: f64,
    pub n2_fv: f64,
    pub modes_used: u64,
    /// Bound on the contribution of the modes beyond the cutoff, both species.
    pub tail_bound: f64,
}

/// Occupations of the zero-momentum mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondensateMode {
    pub n1_0: f64,
    pub n2_0: f64,
    pub q0_occ: f64,
}

/// Largest cutoff the shell tables support.
pub fn max_mode_cutoff() -> u32 {
    ((MAX_SHELL as f64).sqrt().floor()) as u32
}

/// Upper bound on the density carried by all modes with `|n| > mode_cutoff`.
///
/// Each excluded mode's unit cell lies outside radius `N - sqrt(3)/2`, and
/// both occupations are bounded by `e^{|mu|/t} e^{-k/t} / (1 - e^{-E_min/t})`,
/// so the lattice sum is dominated by a radial integral in closed form.
pub fn tail_bound(phase: &PhasePoint, box_spec: &BoxSpec) -> f64 {
    let (t, mu) = (phase.t(), phase.mu().abs());
    let l = box_spec.box_length();
    let n = box_spec.mode_cutoff() as f64;
    let k_cut = 2.0 * PI * n / l;
    let e_min = (k_cut * k_cut + 1.0).sqrt() - mu;
    if !(e_min > 0.0) {
        return f64::INFINITY;
    }
    let half_diagonal = 0.5 * 3f64.sqrt();
    let rate = 2.0 * PI / (l * t);
    let r0 = (n - half_diagonal).max(0.0);
    let poly = r0 * r0 / rate + 2.0 * r0 / (rate * rate) + 2.0 / rate.powi(3);
    let log_amplitude = mu / t - (-(-e_min / t).exp()).ln_1p() + rate * half_diagonal;
    let per_species = 4.0 * PI * (log_amplitude - rate * r0 + poly.ln()).exp() / l.powi(3);
    2.0 * per_species
}

/// Smallest cutoff with `tail_bound < box_spec.tail_tolerance()`.
pub(crate) fn minimal_cutoff(box_spec: &BoxSpec, phase: &PhasePoint) -> Result<u32> {
    let cap = max_mode_cutoff();
    let tol = box_spec.tail_tolerance();
    let bound_at = |n: u32| -> Result<f64> { Ok(tail_bound(phase, &BoxSpec::new(box_spec.box_length(), n, tol)?)) };
    if bound_at(cap)? >= tol {
        return Err(Error::TailTooLarge { bound: bound_at(cap)?, tolerance: tol });
    }
    let (mut lo, mut hi) = (1u32, cap);
    if bound_at(lo)? < tol {
        return Ok(lo);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if bound_at(mid)? < tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Compensated running sum.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Sum over all non-zero modes with `|n| <= mode_cutoff`, divided by `L^3`.
///
/// The zero mode is excluded; at `|mu| = 1` it is the divergent condensate
/// mode. Fails with [`Error::TailTooLarge`] if the excluded modes may carry
/// more than the configured tolerance.
pub fn mode_sum(phase: &PhasePoint, box_spec: &BoxSpec) -> Result<ModeSumResult> {
    let tail = tail_bound(phase, box_spec);
    if !(tail < box_spec.tail_tolerance()) {
        return Err(Error::TailTooLarge { bound: tail, tolerance: box_spec.tail_tolerance() });
    }
    let n = box_spec.mode_cutoff() as usize;
    let s_max = n * n;
    if s_max > MAX_SHELL {
        return Err(Error::InvalidArgument(format!(
            "mode cutoff {n} exceeds the supported maximum {}",
            max_mode_cutoff()
        )));
    }
    let counts = shell_counts(s_max);
    let (t, mu) = (phase.t(), phase.mu());
    let l = box_spec.box_length();
    let spacing = 2.0 * PI / l;
    let mut n1 = Neumaier::default();
    let mut n2 = Neumaier::default();
    let mut modes_used = 0u64;
    for (s, &degeneracy) in counts.iter().enumerate().take(s_max + 1).skip(1) {
        if degeneracy == 0 {
            continue;
        }
        let d = dispersions(spacing * (s as f64).sqrt(), mu);
        let g = degeneracy as f64;
        n1.add(g * bose(d.omega / t));
        n2.add(g * bose(d.omega_bar / t));
        modes_used += degeneracy as u64;
    }
    let volume = l * l * l;
    let (n1_fv, n2_fv) = (n1.total() / volume, n2.total() / volume);
    Ok(ModeSumResult { q_tilde_fv: n1_fv - n2_fv, n1_fv, n2_fv, modes_used, tail_bound: tail })
}

/// Occupations of the `k = 0` particle and antiparticle modes.
pub fn condensate_mode(mu: f64, t: f64) -> Result<CondensateMode> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTemperature { t });
    }
    if mu.abs() > 1.0 || mu.is_nan() {
        return Err(Error::UnphysicalMu { mu });
    }
    if mu.abs() == 1.0 {
        return Err(Error::DivergentCondensateMode);
    }
    let n1_0 = bose((1.0 - mu) / t);
    let n2_0 = bose((1.0 + mu) / t);
    Ok(CondensateMode { n1_0, n2_0, q0_occ: n1_0 - n2_0 })
}

/// Chemical potential at which the zero mode holds net occupation `q0_occ`,
/// solved exactly from both terms.
///
/// The unknown is `x = (1 - mu)/t`, which keeps full relative precision in
/// `1 - mu` when the asymptotic correction is far below the spacing of
/// doubles near 1.
pub fn solve_condensate_mu(q0_occ: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTemperature { t });
    }
    if !q0_occ.is_finite() {
        return Err(Error::InvalidArgument(format!("occupation must be finite, got {q0_occ}")));
    }
    if q0_occ == 0.0 {
        return Ok(0.0);
    }
    if q0_occ < 0.0 {
        return solve_condensate_mu(-q0_occ, t).map(|mu| -mu);
    }
    let residual = |x: f64| Ok(bose(x) - bose(2.0 / t - x) - q0_occ);
    let x_hi = 1.0 / t;
    let x_lo = 1.0 / (q0_occ + bose(x_hi) + 1.0);
    let x_lo = x_lo.min(0.5 * x_hi);
    let (f_lo, f_hi) = (residual(x_lo)?, residual(x_hi)?);
    let tol = Tolerance { x: 1e-17 * x_lo, f: 0.0, max_iters: 400 };
    let x = brent(residual, x_lo, x_hi, f_lo, f_hi, tol, "solve_condensate_mu")?;
    Ok(1.0 - t * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn phase(t: f64, mu: f64) -> PhasePoint {
        PhasePoint::new(t, mu).unwrap()
    }

    /// Mode-by-mode sum over the whole cube, no shell grouping.
    fn ungrouped(phase: &PhasePoint, l: f64, cutoff: i64) -> (f64, f64) {
        let spacing = 2.0 * PI / l;
        let (mut n1, mut n2) = (0.0, 0.0);
        for x in -cutoff..=cutoff {
            for y in -cutoff..=cutoff {
                for z in -cutoff..=cutoff {
                    let s = x * x + y * y + z * z;
                    if s == 0 || s > cutoff * cutoff {
                        continue;
                    }
                    let k = spacing * (s as f64).sqrt();
                    let e = (k * k + 1.0).sqrt();
                    n1 += 1.0 / ((e - phase.mu()) / phase.t()).exp_m1();
                    n2 += 1.0 / ((e + phase.mu()) / phase.t()).exp_m1();
                }
            }
        }
        (n1 / l.powi(3), n2 / l.powi(3))
    }

    #[test]
    fn grouped_matches_ungrouped() {
        for (t, mu) in [(1.0, 0.5), (0.5, -0.9), (2.0, 1.0)] {
            let p = phase(t, mu);
            let box_spec = BoxSpec::new(20.0, 24, 1.0).unwrap();
            let grouped = mode_sum(&p, &box_spec).unwrap();
            let (n1, n2) = ungrouped(&p, 20.0, 24);
            assert_relative_eq!(grouped.n1_fv, n1, max_relative = 1e-12);
            assert_relative_eq!(grouped.n2_fv, n2, max_relative = 1e-12);
        }
    }

    #[test]
    fn zero_mu_cancels_exactly() {
        let p = phase(1.3, 0.0);
        let box_spec = BoxSpec::for_phase(30.0, &p, 1e-8).unwrap();
        let r = mode_sum(&p, &box_spec).unwrap();
        assert_eq!(r.q_tilde_fv, 0.0);
        assert!(r.n1_fv > 0.0);
        assert_eq!(r.q_tilde_fv, r.n1_fv - r.n2_fv);
    }

    #[test]
    fn tail_bound_is_an_upper_bound() {
        let p = phase(1.0, 0.5);
        let wide = mode_sum(&p, &BoxSpec::new(20.0, 120, 1.0).unwrap()).unwrap();
        for cutoff in [10, 20, 40] {
            let narrow = mode_sum(&p, &BoxSpec::new(20.0, cutoff, 1.0).unwrap()).unwrap();
            let missing = (wide.n1_fv - narrow.n1_fv) + (wide.n2_fv - narrow.n2_fv);
            assert!(missing > 0.0 && missing <= narrow.tail_bound, "cutoff {cutoff}");
        }
    }

    #[test]
    fn cutoff_selection_and_rejection() {
        let p = phase(1.0, 0.5);
        let box_spec = BoxSpec::for_phase(50.0, &p, 1e-9).unwrap();
        assert!(tail_bound(&p, &box_spec) < 1e-9);
        let smaller = BoxSpec::new(50.0, box_spec.mode_cutoff() - 1, 1e-9).unwrap();
        assert!(tail_bound(&p, &smaller) >= 1e-9);
        assert!(matches!(mode_sum(&p, &smaller), Err(Error::TailTooLarge { .. })));
        assert!(matches!(BoxSpec::for_phase(1e5, &phase(50.0, 0.0), 1e-12), Err(Error::TailTooLarge { .. })));
    }

    #[test]
    fn mode_sum_increases_with_mu() {
        let box_spec = BoxSpec::new(15.0, 60, 1.0).unwrap();
        let mut last = f64::NEG_INFINITY;
        for mu in [-1.0, -0.6, -0.1, 0.0, 0.3, 0.9, 1.0] {
            let q = mode_sum(&phase(0.8, mu), &box_spec).unwrap().q_tilde_fv;
            assert!(q > last);
            last = q;
        }
    }

    #[test]
    fn conjugation_flips_sign() {
        let box_spec = BoxSpec::new(25.0, 80, 1.0).unwrap();
        let a = mode_sum(&phase(1.1, 0.7), &box_spec).unwrap();
        let b = mode_sum(&phase(1.1, -0.7), &box_spec).unwrap();
        assert_eq!(a.q_tilde_fv, -b.q_tilde_fv);
        assert_eq!(a.n1_fv, b.n2_fv);
    }

    #[test]
    fn condensate_mode_examples() {
        let m = condensate_mode(0.0, 1.0).unwrap();
        assert_relative_eq!(m.n1_0, 1.0 / (1f64.exp() - 1.0), max_relative = 1e-15);
        assert_eq!(m.n1_0, m.n2_0);
        assert_eq!(m.q0_occ, 0.0);
        assert_eq!(condensate_mode(1.0, 1.0), Err(Error::DivergentCondensateMode));
        assert_eq!(condensate_mode(-1.0, 1.0), Err(Error::DivergentCondensateMode));
        assert!(condensate_mode(0.5, 0.0).is_err());
    }

    #[test]
    fn condensate_solve_round_trip() {
        for (q0, t) in [(1.0, 0.3), (2.0, 0.05), (1e4, 0.5), (0.01, 1.0), (-3.0, 0.2)] {
            let mu = solve_condensate_mu(q0, t).unwrap();
            let m = condensate_mode(mu, t).unwrap();
            assert_relative_eq!(m.q0_occ, q0, max_relative = 1e-9);
        }
        assert_eq!(solve_condensate_mu(0.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn zero_temperature_limit_of_condensate_mode() {
        for t in [0.1, 0.05, 0.02] {
            let mu = solve_condensate_mu(2.0, t).unwrap();
            let m = condensate_mode(mu, t).unwrap();
            assert!((m.n1_0 - 2.0).abs() < 2.0 * (-1.0 / t).exp() + 1e-13);
            assert!(m.n2_0 < 2.0 * (-1.9 / t).exp());
        }
    }
}
