use thiserror::Error;

/// Errors produced by the indicator engine, the strategy model and the generator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid panel: {0}")]
    InvalidPanel(String),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("epoch t={epoch} out of range for k={k}, T_max={t_max} (valid epochs are {lo}..={hi})", lo = k + 1, hi = t_max + 1)]
    EpochRange { epoch: usize, k: usize, t_max: usize },

    #[error("insufficient data: window length k={k} exceeds T_max={t_max}")]
    InsufficientData { k: usize, t_max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("period {period} out of range 1..={t_max}")]
    PeriodRange { period: usize, t_max: usize },

    #[error("strategy `{strategy}` is not bound to the panel: unknown parameter ids {unknown:?}")]
    Binding { strategy: String, unknown: Vec<String> },

    #[error("invalid strategy `{strategy}`: {reason}")]
    InvalidStrategy { strategy: String, reason: String },

    #[error("invalid sanction schedule: {0}")]
    Schedule(String),

    #[error("invalid budget constraint: {0}")]
    Budget(String),

    #[error("invalid config field `{field}`: {reason}")]
    InvalidConfig { field: &'static str, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
