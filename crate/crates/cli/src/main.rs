//! `relbec`: tables of the relativistic Bose gas equation of state.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use relbec_core::{QuadratureConfig, SolverConfig};

use commands::Failure;
use table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Equation of state of an ideal relativistic Bose gas with conserved charge,
/// in units of the boson mass.
#[derive(Debug, Parser)]
#[command(name = "relbec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Relative tolerance of the momentum integrals.
    #[arg(long, value_parser = positive, global = true)]
    tol_quad: Option<f64>,
    /// Absolute tolerance on mu/m.
    #[arg(long, value_parser = positive, global = true)]
    tol_mu: Option<f64>,
    /// Relative tolerance on T_c/m.
    #[arg(long, value_parser = positive, global = true)]
    tol_tc: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Chemical potential at charge density q and temperature t.
    Mu {
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        q: f64,
        #[arg(long, value_parser = positive)]
        t: f64,
    },
    /// Critical temperature at charge density q.
    Tc {
        #[arg(long, value_parser = non_negative, allow_hyphen_values = true)]
        q: f64,
    },
    /// Antiparticle to particle ratio on a linear temperature grid, one series per q.
    RatioSweep {
        #[arg(long, value_parser = non_negative, value_delimiter = ',', num_args = 1.., default_values_t = DEFAULT_CHARGES)]
        q: Vec<f64>,
        #[arg(long, value_parser = positive, default_value_t = 0.05)]
        t_min: f64,
        #[arg(long, value_parser = positive, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..), default_value_t = 200)]
        points: u32,
    },
    /// Momentum-space density profiles k^2 n(k) at the state fixed by q and t.
    Profile {
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        q: f64,
        #[arg(long, value_parser = positive)]
        t: f64,
        #[arg(long, value_parser = positive, default_value_t = 10.0)]
        k_max: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..), default_value_t = 201)]
        samples: u32,
    },
    /// Condensed fraction q0/q on t in (0, T_c], one series per q.
    FractionSweep {
        #[arg(long, value_parser = positive, value_delimiter = ',', num_args = 1.., default_values_t = DEFAULT_CHARGES)]
        q: Vec<f64>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..), default_value_t = 50)]
        points: u32,
    },
    /// Critical temperature and transition ratio on a logarithmic charge grid.
    Universal {
        #[arg(long, value_parser = positive, default_value_t = 1e-3)]
        q_min: f64,
        #[arg(long, value_parser = positive, default_value_t = 1e3)]
        q_max: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..), default_value_t = 61)]
        points: u32,
    },
    /// Ultra-relativistic critical temperature in d spatial dimensions.
    DdimTc {
        #[arg(long, value_parser = non_negative, allow_hyphen_values = true)]
        q_over_m: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        dim: u32,
    },
    /// Periodic-box mode sums against the momentum integral.
    OracleCheck {
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        q: f64,
        #[arg(long, value_parser = positive)]
        t: f64,
        #[arg(long, value_parser = positive, value_delimiter = ',', num_args = 1.., default_values_t = [50.0, 100.0, 200.0, 400.0])]
        box_lengths: Vec<f64>,
        /// Bound on the density carried by modes beyond the cutoff.
        #[arg(long, value_parser = positive, default_value_t = 1e-9)]
        tail_tol: f64,
    },
}

const DEFAULT_CHARGES: [f64; 4] = [0.01, 0.1, 1.0, 10.0];

fn parse_real(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"))
}

fn finite(s: &str) -> Result<f64, String> {
    let x = parse_real(s)?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{s} is not finite"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let x = finite(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("{s} is not positive"))
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    let x = finite(s)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("{s} is negative"))
    }
}

fn config(cli: &Cli) -> SolverConfig {
    let defaults = SolverConfig::default();
    SolverConfig {
        mu_tol: cli.tol_mu.unwrap_or(defaults.mu_tol),
        t_tol: cli.tol_tc.unwrap_or(defaults.t_tol),
        quadrature: QuadratureConfig {
            rel_tol: cli.tol_quad.unwrap_or(defaults.quadrature.rel_tol),
            ..defaults.quadrature
        },
        ..defaults
    }
}

/// Checks that need more than one flag; reported as usage errors.
fn check_ranges(command: &Command) -> Result<(), String> {
    match command {
        Command::RatioSweep { t_min, t_max, .. } if t_min >= t_max => {
            Err(format!("--t-min ({t_min}) must be below --t-max ({t_max})"))
        }
        Command::Universal { q_min, q_max, .. } if q_min >= q_max => {
            Err(format!("--q-min ({q_min}) must be below --q-max ({q_max})"))
        }
        _ => Ok(()),
    }
}

fn run(command: &Command, config: &SolverConfig) -> Result<Table, Failure> {
    match *command {
        Command::Mu { q, t } => commands::mu(q, t, config),
        Command::Tc { q } => commands::tc(q, config),
        Command::RatioSweep { ref q, t_min, t_max, points } => {
            commands::ratio_sweep(q, t_min, t_max, points as usize, config)
        }
        Command::Profile { q, t, k_max, samples } => commands::profile(q, t, k_max, samples as usize, config),
        Command::FractionSweep { ref q, points } => commands::fraction_sweep(q, points as usize, config),
        Command::Universal { q_min, q_max, points } => commands::universal(q_min, q_max, points as usize, config),
        Command::DdimTc { q_over_m, dim } => commands::ddim_tc(q_over_m, dim),
        Command::OracleCheck { q, t, ref box_lengths, tail_tol } => {
            commands::oracle_check(q, t, box_lengths, tail_tol, config)
        }
    }
}

fn error_record(operation: &str, kind: &str, message: &str) -> String {
    serde_json::json!({ "error": { "operation": operation, "kind": kind, "message": message } }).to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(message) = check_ranges(&cli.command) {
        Cli::command().error(ErrorKind::ValueValidation, message).exit();
    }
    let config = config(&cli);
    if let Err(e) = config.validate() {
        Cli::command().error(ErrorKind::ValueValidation, e.to_string()).exit();
    }
    let table = match run(&cli.command, &config) {
        Ok(table) => table,
        Err(Failure { operation, error }) => {
            let kind = format!("{error:?}");
            let kind = kind.split([' ', '(', '{']).next().unwrap_or_default();
            eprintln!("{}", error_record(operation, kind, &error.to_string()));
            return ExitCode::from(1);
        }
    };
    let text = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let target = cli.out.as_ref().map_or("stdout".into(), |p| p.display().to_string());
        eprintln!("{}", error_record("write_output", "Io", &format!("{target}: {e}")));
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
