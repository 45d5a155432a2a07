//! Particle density from the modified-Bessel series
//! `n1 = t/(2 pi^2) sum_j e^{j mu/t} K_2(j/t) / j`, independent of the
//! momentum-space quadrature.

use std::f64::consts::PI;

/// `e^x K_nu(x)` from `K_nu(x) = int_0^inf e^{-x cosh u} cosh(nu u) du`.
///
/// The trapezoidal rule converges geometrically for this integrand, which
/// is analytic in a strip and decays double exponentially.
pub fn scaled_bessel_k(nu: f64, x: f64) -> f64 {
    let h = 1.0 / 64.0;
    let mut sum = 0.5;
    let mut i = 1u32;
    loop {
        let u = i as f64 * h;
        let term = (-x * (u.cosh() - 1.0) + nu * u).exp() * 0.5 * (1.0 + (-2.0 * nu * u).exp());
        sum += term;
        if term < 1e-19 * sum {
            break;
        }
        i += 1;
    }
    sum * h
}

/// Particle density `n1/m^3` at `(t, mu)` with `|mu| < 1`.
pub fn particle_density(t: f64, mu: f64) -> f64 {
    let mut sum = 0.0;
    let mut j = 1u32;
    loop {
        let x = j as f64 / t;
        let term = (j as f64 * (mu - 1.0) / t).exp() * scaled_bessel_k(2.0, x) / j as f64;
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        j += 1;
    }
    t * sum / (2.0 * PI * PI)
}
