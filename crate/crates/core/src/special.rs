//! Riemann zeta at integer arguments and the gamma function at integers and
//! half-integers.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const ZETA_2: f64 = PI * PI / 6.0;
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;
pub const ZETA_4: f64 = PI * PI * PI * PI / 90.0;

/// Terms in the Borwein acceleration; the truncation error is about `(3 + sqrt 8)^-n`.
const BORWEIN_TERMS: usize = 32;

/// Dirichlet eta function `sum (-1)^{k-1} k^{-s}` by Borwein's algorithm.
fn dirichlet_eta(s: f64) -> f64 {
    let n = BORWEIN_TERMS;
    // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0 / n as f64;
    let mut acc = 0.0;
    for i in 0..=n {
        if i > 0 {
            let i = i as f64;
            let n = n as f64;
            term *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
        }
        acc += term;
        d.push(n as f64 * acc);
    }
    let dn = d[n];
    let sum: f64 = (0..n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * (d[k] - dn) / ((k + 1) as f64).powf(s)
        })
        .sum();
    -sum / dn
}

/// `zeta(n)` for integer `n >= 2`.
pub fn zeta_int(n: u32) -> Result<f64> {
    match n {
        0 | 1 => Err(Error::InvalidArgument(format!("zeta({n}) is not finite/supported"))),
        2 => Ok(ZETA_2),
        3 => Ok(ZETA_3),
        4 => Ok(ZETA_4),
        _ => {
            let s = n as f64;
            Ok(dirichlet_eta(s) / (1.0 - 2f64.powf(1.0 - s)))
        }
    }
}

/// Accelerated series value of `zeta(n)`, bypassing the tabulated constants.
pub fn zeta_series(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("zeta({n}) is not finite/supported")));
    }
    let s = n as f64;
    Ok(dirichlet_eta(s) / (1.0 - 2f64.powf(1.0 - s)))
}

/// `Gamma(x)` for positive integers and half-integers, by recursion from
/// `Gamma(1) = 1` and `Gamma(1/2) = sqrt(pi)`.
pub fn gamma_half(x: f64) -> Result<f64> {
    let twice = 2.0 * x;
    if !(x > 0.0) || twice.fract() != 0.0 || twice > 343.0 {
        return Err(Error::InvalidArgument(format!("gamma_half needs a positive integer or half-integer, got {x}")));
    }
    let (mut value, mut arg) = if (twice as u64).is_multiple_of(2) { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while arg < x {
        value *= arg;
        arg += 1.0;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Direct partial sum plus Euler-Maclaurin tail, independent of the eta route.
    fn zeta_euler_maclaurin(s: f64) -> f64 {
        let n = 1000.0f64;
        let partial: f64 = (1..1000).map(|k| (k as f64).powf(-s)).sum();
        partial + n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s * n.powf(-s - 1.0) / 12.0
            - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0
    }

    #[test]
    fn tabulated_values() {
        assert_relative_eq!(zeta_int(2).unwrap(), 1.644934, epsilon = 1e-6);
        assert_relative_eq!(zeta_int(3).unwrap(), 1.202_056_90, epsilon = 1e-8);
        assert!(zeta_int(1).is_err());
    }

    #[test]
    fn series_agrees_with_constants_and_euler_maclaurin() {
        assert_relative_eq!(zeta_series(2).unwrap(), ZETA_2, max_relative = 1e-14);
        assert_relative_eq!(zeta_series(3).unwrap(), ZETA_3, max_relative = 1e-14);
        assert_relative_eq!(zeta_series(4).unwrap(), ZETA_4, max_relative = 1e-14);
        for n in 2..12 {
            assert_relative_eq!(zeta_series(n).unwrap(), zeta_euler_maclaurin(n as f64), max_relative = 1e-14);
        }
        assert_relative_eq!(zeta_int(6).unwrap(), PI.powi(6) / 945.0, max_relative = 1e-14);
    }

    #[test]
    fn gamma_values() {
        assert_relative_eq!(gamma_half(1.5).unwrap(), PI.sqrt() / 2.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_half(0.5).unwrap(), PI.sqrt(), max_relative = 1e-15);
        assert_eq!(gamma_half(1.0).unwrap(), 1.0);
        assert_eq!(gamma_half(5.0).unwrap(), 24.0);
        assert_relative_eq!(gamma_half(3.5).unwrap(), 15.0 * PI.sqrt() / 8.0, max_relative = 1e-15);
        assert!(gamma_half(0.0).is_err());
        assert!(gamma_half(1.25).is_err());
    }
}
