//! Adaptive Gauss-Kronrod integration on `[0, inf)` and the thermal charge
//! densities built on it.
//!
//! The half line is split at a cutoff `k_cut` beyond which an exponential
//! envelope of the integrand bounds the remaining tail in closed form. The
//! finite part starts from a geometric partition accumulating at the origin
//! and is refined by bisecting the panel with the largest error.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::statistics::{antiparticle_weight, charge_integrand, particle_weight};
use crate::types::{ChargeDensities, PhasePoint};

/// Tolerances for [`integrate_semi_infinite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum bisection depth of any panel.
    pub max_subdivisions: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-14, max_subdivisions: 60 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) || self.max_subdivisions < 1 {
            return Err(Error::InvalidArgument(format!("invalid quadrature config {self:?}")));
        }
        Ok(())
    }
}

/// `|f(k)| <= exp(log_scale) * k^power * exp(-rate * k)` for all `k >= valid_from`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialEnvelope {
    pub log_scale: f64,
    pub power: u32,
    pub rate: f64,
    pub valid_from: f64,
}

impl ExponentialEnvelope {
    /// Closed-form `int_cut^inf exp(log_scale) k^p e^{-rate k} dk`, i.e. the
    /// upper incomplete gamma function at integer order.
    pub fn tail_bound(&self, cut: f64) -> f64 {
        let mut poly = 0.0;
        let mut falling = 1.0;
        for j in 0..=self.power {
            poly += falling * cut.powi((self.power - j) as i32) / self.rate.powi(j as i32 + 1);
            falling *= (self.power - j) as f64;
        }
        (self.log_scale - self.rate * cut + poly.ln()).exp()
    }
}

/// An integral value with its error estimate (including the tail bound).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

// 15-point Kronrod nodes with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Number of geometric panels laid out between the origin and the cutoff.
const GEOMETRIC_LEVELS: u32 = 40;
const MAX_PANELS: usize = 100_000;
const MAX_CUT_DOUBLINGS: u32 = 64;

/// Integrates `f` over `[0, inf)`.
///
/// `initial_cut` is doubled until the envelope's tail bound drops below
/// `abs_tol`; `[0, cut]` is then integrated adaptively until the total error
/// estimate is below `rel_tol * |value| + abs_tol`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    envelope: &ExponentialEnvelope,
    initial_cut: f64,
    config: &QuadratureConfig,
) -> Result<Estimate> {
    config.validate()?;
    let mut cut = initial_cut.max(envelope.valid_from);
    if !(cut > 0.0) || !cut.is_finite() {
        return Err(Error::InvalidArgument(format!("invalid integration cutoff {cut}")));
    }
    let mut tail = envelope.tail_bound(cut);
    let mut doublings = 0;
    while !(tail < config.abs_tol) {
        doublings += 1;
        if doublings > MAX_CUT_DOUBLINGS {
            return Err(Error::NonConvergence {
                operation: "integrate_semi_infinite",
                detail: format!("tail bound {tail:e} still above {:e} at cut {cut}", config.abs_tol),
            });
        }
        cut *= 2.0;
        tail = envelope.tail_bound(cut);
    }
    let finite = integrate_adaptive(&f, 0.0, cut, config, tail)?;
    Ok(Estimate { value: finite.value, error: finite.error + tail })
}

/// Adaptive integration over `[a, b]` with geometric initial panels towards `a`.
fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    config: &QuadratureConfig,
    extra_error: f64,
) -> Result<Estimate> {
    let mut heap = BinaryHeap::new();
    let mut hi = b;
    for level in 0..GEOMETRIC_LEVELS {
        let lo = if level + 1 == GEOMETRIC_LEVELS { a } else { a + (b - a) * 0.5f64.powi(level as i32 + 1) };
        let (value, error) = kronrod(f, lo, hi);
        heap.push(Panel { a: lo, b: hi, value, error, depth: 0 });
        hi = lo;
    }
    let mut value: f64 = heap.iter().map(|p| p.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.error).sum();
    loop {
        if !value.is_finite() {
            return Err(Error::NonConvergence {
                operation: "integrate_semi_infinite",
                detail: "integrand produced a non-finite value".into(),
            });
        }
        if error + extra_error <= config.rel_tol * value.abs() + config.abs_tol {
            break;
        }
        let worst = heap.pop().expect("panel heap is never empty");
        if worst.depth >= config.max_subdivisions || heap.len() >= MAX_PANELS {
            return Err(Error::NonConvergence {
                operation: "integrate_semi_infinite",
                detail: format!(
                    "error {error:e} above tolerance after refining [{}, {}] to depth {}",
                    worst.a, worst.b, worst.depth
                ),
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = kronrod(f, worst.a, mid);
        let (rv, re) = kronrod(f, mid, worst.b);
        value += lv + rv - worst.value;
        error += le + re - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: lv, error: le, depth: worst.depth + 1 });
        heap.push(Panel { a: mid, b: worst.b, value: rv, error: re, depth: worst.depth + 1 });
        // refresh the running sums now and then to stop drift
        if heap.len() % 256 == 0 {
            value = heap.iter().map(|p| p.value).sum();
            error = heap.iter().map(|p| p.error).sum();
        }
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = panels.iter().map(|p| p.value).sum();
    let error = panels.iter().map(|p| p.error).sum::<f64>() + extra_error;
    Ok(Estimate { value, error })
}

/// Starting cutoff for the charge integrands: `max(10 t, 10)`.
fn charge_cut(phase: &PhasePoint) -> f64 {
    (10.0 * phase.t()).max(10.0)
}

/// Envelope of `k^2 / (e^{(sqrt(k^2+1) - s mu)/t} - 1)` for `k >= cut`, any sign `s`.
fn charge_envelope(phase: &PhasePoint, cut: f64) -> ExponentialEnvelope {
    let t = phase.t();
    let mu = phase.mu().abs();
    // n(E) <= e^{-E/t} / (1 - e^{-E_min/t}) with E >= k - |mu|
    let e_min = (cut * cut + 1.0).sqrt() - mu;
    ExponentialEnvelope { log_scale: mu / t - (-(-e_min / t).exp()).ln_1p(), power: 2, rate: 1.0 / t, valid_from: cut }
}

const INV_TWO_PI_SQ: f64 = 1.0 / (2.0 * PI * PI);

fn integrate_charge<F: Fn(f64) -> f64>(phase: &PhasePoint, f: F, config: &QuadratureConfig) -> Result<Estimate> {
    let cut = charge_cut(phase);
    let est = integrate_semi_infinite(f, &charge_envelope(phase, cut), cut, config)?;
    Ok(Estimate { value: est.value * INV_TWO_PI_SQ, error: est.error * INV_TWO_PI_SQ })
}

/// Net thermal charge `q~` from a single integration of the difference integrand.
pub fn net_thermal_charge(phase: &PhasePoint, config: &QuadratureConfig) -> Result<f64> {
    if phase.mu() == 0.0 {
        return Ok(0.0);
    }
    Ok(integrate_charge(phase, |k| charge_integrand(k, phase), config)?.value)
}

/// Particle density `n1`.
pub fn particle_density(phase: &PhasePoint, config: &QuadratureConfig) -> Result<f64> {
    Ok(integrate_charge(phase, |k| particle_weight(k, phase), config)?.value)
}

/// Antiparticle density `n2`.
pub fn antiparticle_density(phase: &PhasePoint, config: &QuadratureConfig) -> Result<f64> {
    Ok(integrate_charge(phase, |k| antiparticle_weight(k, phase), config)?.value)
}

/// Particle, antiparticle and net thermal charge densities at `phase`.
///
/// `n1` and `n2` are integrated independently; the net charge is also
/// integrated directly and the two routes must agree to `10 rel_tol` on the
/// scale of `n1 + n2`.
pub fn thermal_charge_density(phase: &PhasePoint, config: &QuadratureConfig) -> Result<ChargeDensities> {
    let n1 = particle_density(phase, config)?;
    let n2 = antiparticle_density(phase, config)?;
    let direct = net_thermal_charge(phase, config)?;
    let split = n1 - n2;
    let allowed = 10.0 * (config.rel_tol * (n1 + n2) + config.abs_tol);
    if (direct - split).abs() > allowed {
        return Err(Error::RouteMismatch { direct, split });
    }
    ChargeDensities::new(n1, n2)
}
