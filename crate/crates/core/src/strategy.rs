//! HR strategies, sanction schedules and the resource constraint.
//!
//! A strategy is a set of duties, each mapped explicitly to the panel
//! parameters whose costs it drives. A sanction schedule blocks duties over
//! inclusive period intervals; blocking sets the mapped parameters to zero
//! for those periods. Intervals may run past the end of the panel, the
//! nonexistent periods are ignored.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::panel::SeriesPanel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Duty {
    pub duty_id: String,
    pub position: String,
    pub description: String,
    pub mapped_parameters: BTreeSet<String>,
    /// Whether the duty is prescribed (1) or not (0).
    pub compliance: bool,
}

impl Duty {
    pub fn new<I, S>(duty_id: impl Into<String>, mapped_parameters: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            duty_id: duty_id.into(),
            position: String::new(),
            description: String::new(),
            mapped_parameters: mapped_parameters.into_iter().map(Into::into).collect(),
            compliance: true,
        }
    }

    pub fn with_position(mut self, position: impl Into<String>, description: impl Into<String>) -> Self {
        self.position = position.into();
        self.description = description.into();
        self
    }

    pub fn with_compliance(mut self, compliance: bool) -> Self {
        self.compliance = compliance;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    label: String,
    duties: Vec<Duty>,
    /// Periods in which a duty is performed; duties without an entry are active throughout.
    active: BTreeMap<String, BTreeSet<usize>>,
}

impl Strategy {
    pub fn new(label: impl Into<String>, duties: Vec<Duty>) -> Result<Self> {
        let label = label.into();
        let mut seen = HashSet::new();
        for duty in &duties {
            if !seen.insert(duty.duty_id.as_str()) {
                return Err(Error::InvalidStrategy {
                    strategy: label,
                    reason: format!("duplicate duty id `{}`", duty.duty_id),
                });
            }
            if duty.mapped_parameters.is_empty() {
                return Err(Error::InvalidStrategy {
                    strategy: label,
                    reason: format!("duty `{}` maps no parameters", duty.duty_id),
                });
            }
        }
        Ok(Self {
            label,
            duties,
            active: BTreeMap::new(),
        })
    }

    /// Restricts `duty_id` to the given periods.
    pub fn with_active_periods<I>(mut self, duty_id: &str, periods: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if self.duty(duty_id).is_none() {
            return Err(Error::InvalidStrategy {
                strategy: self.label,
                reason: format!("active periods given for undeclared duty `{duty_id}`"),
            });
        }
        self.active
            .entry(duty_id.to_owned())
            .or_default()
            .extend(periods);
        Ok(self)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn duties(&self) -> &[Duty] {
        &self.duties
    }

    pub fn duty(&self, duty_id: &str) -> Option<&Duty> {
        self.duties.iter().find(|d| d.duty_id == duty_id)
    }

    pub fn is_active(&self, duty_id: &str, period: usize) -> bool {
        self.active
            .get(duty_id)
            .is_none_or(|periods| periods.contains(&period))
    }

    /// Resolves parameter ids against `panel` and checks active periods.
    pub fn bind<'a>(&'a self, panel: &SeriesPanel) -> Result<BoundStrategy<'a>> {
        let mut unknown = BTreeSet::new();
        let mut duties = Vec::with_capacity(self.duties.len());
        for duty in &self.duties {
            let mut indices = Vec::with_capacity(duty.mapped_parameters.len());
            for p in &duty.mapped_parameters {
                match panel.index_of(p) {
                    Some(i) => indices.push(i),
                    None => {
                        unknown.insert(p.clone());
                    }
                }
            }
            duties.push((duty, indices));
        }
        if !unknown.is_empty() {
            return Err(Error::Binding {
                strategy: self.label.clone(),
                unknown: unknown.into_iter().collect(),
            });
        }
        for (duty_id, periods) in &self.active {
            if let Some(&bad) = periods.iter().find(|&&p| p == 0 || p > panel.t_max()) {
                return Err(Error::InvalidStrategy {
                    strategy: self.label.clone(),
                    reason: format!(
                        "duty `{duty_id}` active in period {bad}, outside 1..={}",
                        panel.t_max()
                    ),
                });
            }
        }
        Ok(BoundStrategy {
            strategy: self,
            t_max: panel.t_max(),
            duties,
        })
    }
}

/// A strategy whose parameter ids are resolved to panel indices.
#[derive(Debug)]
pub struct BoundStrategy<'a> {
    strategy: &'a Strategy,
    t_max: usize,
    duties: Vec<(&'a Duty, Vec<usize>)>,
}

impl BoundStrategy<'_> {
    /// Parameter indices mapped by `duty_id`, if the duty exists.
    pub fn parameters_of(&self, duty_id: &str) -> Option<&[usize]> {
        self.duties
            .iter()
            .find(|(d, _)| d.duty_id == duty_id)
            .map(|(_, idx)| idx.as_slice())
    }

    /// V(t): mapped values of every compliant duty active at `period`.
    ///
    /// A parameter mapped by several active duties is counted once per duty.
    pub fn cost(&self, panel: &SeriesPanel, period: usize) -> Result<f64> {
        if period == 0 || period > self.t_max || panel.t_max() != self.t_max {
            return Err(Error::PeriodRange {
                period,
                t_max: panel.t_max(),
            });
        }
        Ok(self
            .duties
            .iter()
            .filter(|(d, _)| d.compliance && self.strategy.is_active(&d.duty_id, period))
            .map(|(_, params)| params.iter().map(|&i| panel.value(i, period)).sum::<f64>())
            .sum())
    }
}

/// Cost of `strategy` in one period.
pub fn strategy_cost(strategy: &Strategy, panel: &SeriesPanel, period: usize) -> Result<f64> {
    strategy.bind(panel)?.cost(panel, period)
}

/// V = Σ_t V(t) over every period of the panel.
pub fn aggregate_strategy_cost(strategy: &Strategy, panel: &SeriesPanel) -> Result<f64> {
    let bound = strategy.bind(panel)?;
    (1..=panel.t_max()).map(|t| bound.cost(panel, t)).sum()
}

/// A duty blocked over the inclusive periods `from..=to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub duty_id: String,
    pub from: usize,
    pub to: usize,
}

impl Block {
    pub fn new(duty_id: impl Into<String>, from: usize, to: usize) -> Self {
        Self {
            duty_id: duty_id.into(),
            from,
            to,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SanctionSchedule {
    blocks: Vec<Block>,
}

impl SanctionSchedule {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        for (idx, b) in blocks.iter().enumerate() {
            if b.from == 0 {
                return Err(Error::Schedule(format!(
                    "block {idx} (`{}`): periods start at 1, got from=0",
                    b.duty_id
                )));
            }
            if b.from > b.to {
                return Err(Error::Schedule(format!(
                    "block {idx} (`{}`): from={} is after to={}",
                    b.duty_id, b.from, b.to
                )));
            }
        }
        Ok(Self { blocks })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// The set of (parameter, period) cells a schedule zeroes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SanctionMask {
    t_max: usize,
    cells: Vec<bool>,
}

impl SanctionMask {
    pub fn contains(&self, parameter: usize, period: usize) -> bool {
        (1..=self.t_max).contains(&period) && self.cells[parameter * self.t_max + period - 1]
    }

    /// Number of distinct masked cells.
    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// Masked cells as (parameter index, period) pairs in parameter-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(pos, _)| (pos / self.t_max, pos % self.t_max + 1))
    }
}

/// Resolves `schedule` against `strategy` and `panel` into a cell mask.
pub fn sanction_mask(
    panel: &SeriesPanel,
    strategy: &Strategy,
    schedule: &SanctionSchedule,
) -> Result<SanctionMask> {
    let bound = strategy.bind(panel)?;
    let t_max = panel.t_max();
    let mut cells = vec![false; panel.n() * t_max];
    for (idx, block) in schedule.blocks().iter().enumerate() {
        let params = bound.parameters_of(&block.duty_id).ok_or_else(|| {
            Error::Schedule(format!(
                "block {idx}: duty `{}` is not part of strategy `{}`",
                block.duty_id,
                strategy.label()
            ))
        })?;
        if block.from > t_max {
            continue;
        }
        let (lo, hi) = (block.from, block.to.min(t_max));
        for &p in params {
            cells[p * t_max + lo - 1..p * t_max + hi].fill(true);
        }
    }
    Ok(SanctionMask { t_max, cells })
}

/// Returns a copy of `panel` with every cell blocked by `schedule` set to 0.
pub fn apply_sanctions(
    panel: &SeriesPanel,
    strategy: &Strategy,
    schedule: &SanctionSchedule,
) -> Result<SeriesPanel> {
    let mask = sanction_mask(panel, strategy, schedule)?;
    Ok(mask_panel(panel, &mask))
}

pub(crate) fn mask_panel(panel: &SeriesPanel, mask: &SanctionMask) -> SeriesPanel {
    let mut out = panel.clone();
    for (v, &blocked) in out.values_mut().iter_mut().zip(&mask.cells) {
        if blocked {
            *v = 0.0;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetScope {
    #[default]
    PerPeriod,
    Cumulative,
}

/// C(X) ≤ C with C = `cap`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BudgetConstraint {
    pub cap: f64,
    #[serde(default)]
    pub scope: BudgetScope,
}

impl BudgetConstraint {
    pub fn new(cap: f64, scope: BudgetScope) -> Result<Self> {
        if cap.is_nan() || cap < 0.0 {
            return Err(Error::Budget(format!("cap must be >= 0, got {cap}")));
        }
        Ok(Self { cap, scope })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scope", rename_all = "snake_case")]
pub enum BudgetViolations {
    /// Periods whose cross-parameter total exceeds the cap.
    PerPeriod { periods: Vec<usize> },
    /// Whether the grand total exceeds the cap.
    Cumulative { total: f64, exceeded: bool },
}

impl BudgetViolations {
    pub fn is_clean(&self) -> bool {
        match self {
            Self::PerPeriod { periods } => periods.is_empty(),
            Self::Cumulative { exceeded, .. } => !exceeded,
        }
    }
}

pub fn check_budget(panel: &SeriesPanel, constraint: &BudgetConstraint) -> BudgetViolations {
    match constraint.scope {
        BudgetScope::PerPeriod => BudgetViolations::PerPeriod {
            periods: (1..=panel.t_max())
                .filter(|&t| panel.period_total(t) > constraint.cap)
                .collect(),
        },
        BudgetScope::Cumulative => {
            let total: f64 = (1..=panel.t_max()).map(|t| panel.period_total(t)).sum();
            BudgetViolations::Cumulative {
                total,
                exceeded: total > constraint.cap,
            }
        }
    }
}
