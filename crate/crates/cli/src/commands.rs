//! One function per subcommand, each producing a [`Table`].

use rayon::prelude::*;
use relbec_core::{
    condensed_solution, critical_temperature, ddim_critical_temperature, density_ratio, mode_sum, momentum_profile,
    solve_mu, solve_state, thermal_charge_density, universal_curves, ur_critical_temperature, ur_density_ratio,
    BoxSpec, Dimension, Error, PhasePoint, SolverConfig,
};

use crate::table::{Cell, Table};

/// A failed computation, tagged with the operation that failed.
#[derive(Debug)]
pub struct Failure {
    pub operation: &'static str,
    pub error: Error,
}

pub type Outcome<T> = std::result::Result<T, Failure>;

trait Tag<T> {
    fn during(self, operation: &'static str) -> Outcome<T>;
}

impl<T> Tag<T> for relbec_core::Result<T> {
    fn during(self, operation: &'static str) -> Outcome<T> {
        self.map_err(|error| Failure { operation, error })
    }
}

use Cell::{Count, Real};

pub fn mu(q: f64, t: f64, config: &SolverConfig) -> Outcome<Table> {
    let mu = solve_mu(q, t, config).during("solve_mu")?;
    let mut table = Table::new(&["q_over_m3", "t_over_m", "mu_over_m"]);
    table.push(vec![Real(q), Real(t), Real(mu)]);
    Ok(table)
}

pub fn tc(q: f64, config: &SolverConfig) -> Outcome<Table> {
    let t_c = critical_temperature(q, config).during("critical_temperature")?;
    let mut table = Table::new(&["q_over_m3", "tc_over_m"]);
    table.push(vec![Real(q), Real(t_c)]);
    Ok(table)
}

/// Linear grid of `points` values on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    (0..points).map(|i| if i + 1 == points { hi } else { lo + (hi - lo) * i as f64 / (points - 1) as f64 }).collect()
}

/// `n2/n1` along a linear temperature grid. Each series starts at its
/// critical temperature, when that lies in the window, and omits colder points.
pub fn ratio_sweep(qs: &[f64], t_min: f64, t_max: f64, points: usize, config: &SolverConfig) -> Outcome<Table> {
    let grid = linear_grid(t_min, t_max, points);
    let mut tasks = Vec::new();
    for &q in qs {
        let t_c = critical_temperature(q, config).during("critical_temperature")?;
        if (t_min..=t_max).contains(&t_c) && t_c > 0.0 {
            tasks.push((q, t_c));
        }
        tasks.extend(grid.iter().filter(|&&t| t > t_c).map(|&t| (q, t)));
    }
    let ratios: Vec<f64> =
        tasks.par_iter().map(|&(q, t)| density_ratio(q, t, config).during("density_ratio")).collect::<Outcome<_>>()?;
    let mut table = Table::new(&["q_over_m3", "t_over_m", "n2_over_n1"]);
    for (&(q, t), r) in tasks.iter().zip(ratios) {
        table.push(vec![Real(q), Real(t), Real(r)]);
    }
    Ok(table)
}

/// `k^2`-weighted occupations at the chemical potential fixed by `(q, t)`.
pub fn profile(q: f64, t: f64, k_max: f64, samples: usize, config: &SolverConfig) -> Outcome<Table> {
    let state = solve_state(q, t, config).during("solve_state")?;
    let p = momentum_profile(&state.phase, k_max, samples).during("momentum_profile")?;
    let mut table = Table::new(&["k_over_m", "n1_k", "n2_k"]);
    for ((&k, &n1), &n2) in p.k_grid.iter().zip(&p.n1_of_k).zip(&p.n2_of_k) {
        table.push(vec![Real(k), Real(n1), Real(n2)]);
    }
    Ok(table)
}

/// `q0/q` at `t_i = T_c i / points`, `i = 1..=points`.
pub fn fraction_sweep(qs: &[f64], points: usize, config: &SolverConfig) -> Outcome<Table> {
    let mut tasks = Vec::new();
    for &q in qs {
        let t_c = critical_temperature(q, config).during("critical_temperature")?;
        tasks.extend((1..=points).map(|i| (q, if i == points { t_c } else { t_c * i as f64 / points as f64 })));
    }
    let fractions: Vec<f64> = tasks
        .par_iter()
        .map(|&(q, t)| Ok(condensed_solution(q, t, config).during("condensed_solution")?.condensed_fraction()))
        .collect::<Outcome<_>>()?;
    let mut table = Table::new(&["q_over_m3", "t_over_m", "q0_over_q"]);
    for (&(q, t), f) in tasks.iter().zip(fractions) {
        table.push(vec![Real(q), Real(t), Real(f)]);
    }
    Ok(table)
}

/// Critical temperature and transition ratio against the ultra-relativistic forms.
pub fn universal(q_min: f64, q_max: f64, points: usize, config: &SolverConfig) -> Outcome<Table> {
    let curves = universal_curves(q_min, q_max, points, config).during("universal_curves")?;
    let mut table = Table::new(&["q_over_m3", "tc_over_m", "n2_over_n1", "tc_ur", "ratio_ur"]);
    for c in curves {
        let tc_ur = ur_critical_temperature(c.q);
        table.push(vec![Real(c.q), Real(c.t_c), Real(c.ratio), Real(tc_ur), Real(ur_density_ratio(tc_ur, 1.0))]);
    }
    Ok(table)
}

pub fn ddim_tc(q_over_m: f64, dim: u32) -> Outcome<Table> {
    let dimension = Dimension::new(dim).during("ddim_critical_temperature")?;
    let t_c = ddim_critical_temperature(q_over_m, dimension).during("ddim_critical_temperature")?;
    let mut table = Table::new(&["q_over_m", "dim", "tc_over_m"]);
    table.push(vec![Real(q_over_m), Count(dim as u64), Real(t_c)]);
    Ok(table)
}

/// Finite-box mode sums against the integral at the state fixed by `(q, t)`.
///
/// `rel_deviation` is relative to `|q_tilde_quad|`, or absolute when that vanishes.
pub fn oracle_check(q: f64, t: f64, box_lengths: &[f64], tail_tolerance: f64, config: &SolverConfig) -> Outcome<Table> {
    let mu = match solve_mu(q, t, config) {
        Ok(mu) => mu,
        Err(Error::BelowCritical { .. }) => 1.0,
        Err(error) => return Err(Failure { operation: "solve_mu", error }),
    };
    let phase = PhasePoint::new(t, mu).during("solve_mu")?;
    let quad = thermal_charge_density(&phase, &config.quadrature).during("thermal_charge_density")?.q_tilde();
    let mut table =
        Table::new(&["box_length", "q_tilde_fv", "q_tilde_quad", "rel_deviation", "modes_used", "tail_bound"]);
    for &l in box_lengths {
        let box_spec = BoxSpec::for_phase(l, &phase, tail_tolerance).during("mode_sum")?;
        let r = mode_sum(&phase, &box_spec).during("mode_sum")?;
        let deviation = r.q_tilde_fv - quad;
        let rel = if quad == 0.0 { deviation } else { deviation / quad.abs() };
        table.push(vec![Real(l), Real(r.q_tilde_fv), Real(quad), Real(rel), Count(r.modes_used), Real(r.tail_bound)]);
    }
    Ok(table)
}
