//! Integral correlation indicators for multidimensional economic panels.
//!
//! A panel holds `n` parameters (costs and incomes) over `T_max` periods.
//! For every epoch `t` the `k` preceding periods form a window; the window's
//! correlation matrix yields per-parameter indicators
//! `G_i(t) = Σ_j |r_ij(t)|`, and the system indicator `G` sums them over all
//! epochs and parameters. Strategies map personnel duties to the parameters
//! they drive; sanction schedules block duties over period intervals, and
//! [`compare_strategies`] reports how `G` moves when they do.

pub mod compare;
pub mod correlation;
pub mod error;
pub mod gram;
pub mod panel;
pub mod rng;
pub mod stats;
pub mod strategy;
pub mod synth;
pub mod trace;
pub mod window;

pub use compare::{
    compare_strategies, compare_strategies_with, BudgetComparison, Comparison, EconomicDelta,
    EconomicParameter, ParameterDelta, ScenarioReport,
};
pub use correlation::{correlation_matrix, indicator_row_sums, CorrelationMatrix};
pub use error::{Error, Result};
pub use gram::{sliding_gram_update, Gram};
pub use panel::SeriesPanel;
pub use strategy::{
    aggregate_strategy_cost, apply_sanctions, check_budget, sanction_mask, strategy_cost, Block,
    BudgetConstraint, BudgetScope, BudgetViolations, Duty, SanctionMask, SanctionSchedule,
    Strategy,
};
pub use synth::{generate_panel, LoadingMode, ShockEvent, SynthConfig};
pub use trace::{
    indicator_trace, indicator_trace_with, IndicatorKind, IndicatorTrace, TraceMethod,
    TraceOptions,
};
pub use window::{build_window, CorrelationMode, WindowMatrix, WindowSpec};
