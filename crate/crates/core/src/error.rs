use thiserror::Error;

/// Errors raised by the equation-of-state engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("temperature must be positive, got t = {t}")]
    NonPositiveTemperature { t: f64 },

    #[error("chemical potential |mu| = {mu} exceeds the mass (|mu| <= 1 in scaled units)")]
    UnphysicalMu { mu: f64 },

    #[error("gapless mode: occupation diverges at zero energy")]
    GaplessMode,

    #[error("{operation} did not converge: {detail}")]
    NonConvergence { operation: &'static str, detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("charge q = {q} at t = {t} exceeds the thermal capacity {capacity}; the state is condensed")]
    BelowCritical { q: f64, t: f64, capacity: f64 },

    #[error("t = {t} lies above the critical temperature for q = {q} (thermal charge {thermal})")]
    AboveCritical { q: f64, t: f64, thermal: f64 },

    #[error("dimension d = {d} is unsupported; condensation requires d >= 3")]
    UnsupportedDimension { d: u32 },

    #[error("energy {eps} lies below the mass gap")]
    BelowMassGap { eps: f64 },

    #[error("asymptotic formula evaluated outside its validity region (denominator {denominator})")]
    AsymptoteOutOfRange { denominator: f64 },

    #[error("condensate mode diverges at |mu| = 1")]
    DivergentCondensateMode,

    #[error("mode-sum tail bound {bound:e} exceeds tolerance {tolerance:e}")]
    TailTooLarge { bound: f64, tolerance: f64 },

    #[error("integration routes disagree: difference integral {direct}, n1 - n2 = {split}")]
    RouteMismatch { direct: f64, split: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
