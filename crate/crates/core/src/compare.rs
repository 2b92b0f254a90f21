//! Strategy comparison: the system indicator of a baseline panel against the
//! same panel with the alternative strategy's sanctions applied.
//!
//! Sign convention: `delta_g = g_values[1] - g_values[0]`, i.e. alternative
//! (sanctioned) minus baseline. A positive value means the sanctioned system
//! is more strongly coupled.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::panel::SeriesPanel;
use crate::strategy::{
    aggregate_strategy_cost, check_budget, mask_panel, sanction_mask, BudgetConstraint,
    BudgetViolations, SanctionSchedule, Strategy,
};
use crate::trace::{indicator_trace_with, IndicatorTrace, TraceOptions};
use crate::window::WindowSpec;

pub const DELTA_G_CONVENTION: &str = "g_values[1] - g_values[0] (alternative minus baseline)";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterDelta {
    pub parameter_id: String,
    pub delta: f64,
}

/// A labeled economic quantity reported under both strategies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EconomicParameter {
    pub label: String,
    pub baseline: f64,
    pub alternative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EconomicDelta {
    pub label: String,
    pub baseline: f64,
    pub alternative: f64,
    pub absolute_delta: f64,
    /// Relative change in percent; absent when the baseline is zero.
    pub percent_delta: Option<f64>,
}

impl From<&EconomicParameter> for EconomicDelta {
    fn from(p: &EconomicParameter) -> Self {
        let absolute_delta = p.alternative - p.baseline;
        Self {
            label: p.label.clone(),
            baseline: p.baseline,
            alternative: p.alternative,
            absolute_delta,
            percent_delta: (p.baseline != 0.0).then(|| 100.0 * absolute_delta / p.baseline),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetComparison {
    pub baseline: BudgetViolations,
    pub alternative: BudgetViolations,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub strategy_labels: [String; 2],
    pub window: WindowSpec,
    pub g_values: [f64; 2],
    pub delta_g: f64,
    pub delta_g_convention: String,
    /// Aggregate strategy cost V of each strategy on its own panel.
    pub strategy_costs: [f64; 2],
    pub epochs: Vec<usize>,
    /// Σ_i G_i(t) per epoch for each strategy.
    pub epoch_totals: [Vec<f64>; 2],
    pub per_parameter_delta: Vec<ParameterDelta>,
    pub blocked_cells: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub economic_deltas: Option<Vec<EconomicDelta>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_violations: Option<BudgetComparison>,
}

impl ScenarioReport {
    pub fn with_economic(mut self, params: &[EconomicParameter]) -> Self {
        self.economic_deltas = Some(params.iter().map(EconomicDelta::from).collect());
        self
    }
}

/// Both traces and the sanctioned panel behind a [`ScenarioReport`].
#[derive(Debug, Clone)]
pub struct Comparison {
    pub report: ScenarioReport,
    pub baseline_trace: IndicatorTrace,
    pub alternative_trace: IndicatorTrace,
    pub sanctioned_panel: SeriesPanel,
}

pub fn compare_strategies(
    panel: &SeriesPanel,
    baseline: &Strategy,
    alternative: &Strategy,
    schedule: &SanctionSchedule,
    spec: &WindowSpec,
    constraint: Option<&BudgetConstraint>,
) -> Result<ScenarioReport> {
    compare_strategies_with(
        panel,
        baseline,
        alternative,
        schedule,
        spec,
        constraint,
        TraceOptions::default(),
    )
    .map(|c| c.report)
}

pub fn compare_strategies_with(
    panel: &SeriesPanel,
    baseline: &Strategy,
    alternative: &Strategy,
    schedule: &SanctionSchedule,
    spec: &WindowSpec,
    constraint: Option<&BudgetConstraint>,
    options: TraceOptions,
) -> Result<Comparison> {
    spec.validate_for(panel)?;
    baseline.bind(panel)?;
    let mask = sanction_mask(panel, alternative, schedule)?;
    let sanctioned = mask_panel(panel, &mask);

    let (first, second) = rayon::join(
        || indicator_trace_with(panel, spec, options),
        || indicator_trace_with(&sanctioned, spec, options),
    );
    let (t1, t2) = (first?, second?);

    let per_parameter_delta = panel
        .parameter_ids()
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let delta = t1
                .g()
                .chunks_exact(t1.n())
                .zip(t2.g().chunks_exact(t2.n()))
                .map(|(a, b)| b[i] - a[i])
                .sum();
            ParameterDelta {
                parameter_id: id.clone(),
                delta,
            }
        })
        .collect();

    let budget_violations = constraint.map(|c| BudgetComparison {
        baseline: check_budget(panel, c),
        alternative: check_budget(&sanctioned, c),
    });

    let g_values = [t1.g_total(), t2.g_total()];
    let report = ScenarioReport {
        strategy_labels: [baseline.label().to_owned(), alternative.label().to_owned()],
        window: *spec,
        g_values,
        delta_g: g_values[1] - g_values[0],
        delta_g_convention: DELTA_G_CONVENTION.to_owned(),
        strategy_costs: [
            aggregate_strategy_cost(baseline, panel)?,
            aggregate_strategy_cost(alternative, &sanctioned)?,
        ],
        epochs: t1.epochs().to_vec(),
        epoch_totals: [t1.epoch_totals(), t2.epoch_totals()],
        per_parameter_delta,
        blocked_cells: mask.count(),
        economic_deltas: None,
        budget_violations,
    };
    Ok(Comparison {
        report,
        baseline_trace: t1,
        alternative_trace: t2,
        sanctioned_panel: sanctioned,
    })
}
