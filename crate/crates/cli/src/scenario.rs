//! Scenario files: the window, duties, the two strategies to compare, the
//! sanction blocks applied to the second strategy, and optional budget and
//! economic side data.
//!
//! TOML by default; a `.json` extension selects JSON.

use std::collections::BTreeSet;
use std::path::Path;

use integral_core::{
    Block, BudgetConstraint, BudgetScope, CorrelationMode, Duty, EconomicParameter,
    SanctionSchedule, SeriesPanel, Strategy, WindowSpec,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowEntry {
    pub k: usize,
    #[serde(default)]
    pub mode: CorrelationMode,
}

/// `true`/`false` or the `1`/`0` of a job-description compliance flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Compliance {
    Flag(bool),
    Number(u8),
}

impl Compliance {
    fn as_bool(self) -> Option<bool> {
        match self {
            Self::Flag(b) => Some(b),
            Self::Number(0) => Some(false),
            Self::Number(1) => Some(true),
            Self::Number(_) => None,
        }
    }
}

impl Default for Compliance {
    fn default() -> Self {
        Self::Flag(true)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DutyEntry {
    pub duty_id: String,
    #[serde(default)]
    pub position: String,
    #[serde(default)]
    pub description: String,
    pub mapped_parameters: Vec<String>,
    #[serde(default)]
    pub compliance: Compliance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyEntry {
    pub label: String,
    pub duty_ids: Vec<String>,
    /// Per duty, inclusive `[from, to]` intervals in which it is performed.
    #[serde(default)]
    pub active_periods: Option<std::collections::BTreeMap<String, Vec<[usize; 2]>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockEntry {
    pub duty_id: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetEntry {
    pub cap: f64,
    #[serde(default)]
    pub scope: BudgetScope,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub window: WindowEntry,
    pub duties: Vec<DutyEntry>,
    pub strategies: Vec<StrategyEntry>,
    #[serde(default)]
    pub blocks: Vec<BlockEntry>,
    #[serde(default)]
    pub budget: Option<BudgetEntry>,
    #[serde(default)]
    pub economic: Vec<EconomicParameter>,
}

/// A scenario resolved against a panel.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub spec: WindowSpec,
    pub baseline: Strategy,
    pub alternative: Strategy,
    pub schedule: SanctionSchedule,
    pub budget: Option<BudgetConstraint>,
    pub economic: Vec<EconomicParameter>,
}

impl ScenarioFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::read(path, e))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let parsed = if is_json {
            serde_json::from_str(&text).map_err(|e| e.to_string())
        } else {
            toml::from_str(&text).map_err(|e| e.to_string())
        };
        let file: Self =
            parsed.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        file.check_shape()?;
        Ok(file)
    }

    /// Checks that need nothing but the file itself (exit 2 on failure).
    pub fn check_shape(&self) -> Result<()> {
        WindowSpec::new(self.window.k, self.window.mode)?;
        if self.strategies.len() != 2 {
            return Err(CliError::Input(format!(
                "expected exactly 2 strategies (baseline, alternative), found {}",
                self.strategies.len()
            )));
        }
        for (idx, b) in self.blocks.iter().enumerate() {
            if b.from == 0 || b.from > b.to {
                return Err(CliError::Input(format!(
                    "blocks[{idx}] (duty `{}`): invalid interval from={} to={}",
                    b.duty_id, b.from, b.to
                )));
            }
        }
        for (idx, d) in self.duties.iter().enumerate() {
            if d.compliance.as_bool().is_none() {
                return Err(CliError::Input(format!(
                    "duties[{idx}] (`{}`): compliance must be 0, 1, true or false",
                    d.duty_id
                )));
            }
            if d.mapped_parameters.is_empty() {
                return Err(CliError::Input(format!(
                    "duties[{idx}] (`{}`): mapped_parameters is empty",
                    d.duty_id
                )));
            }
        }
        for (idx, s) in self.strategies.iter().enumerate() {
            for (duty, ranges) in s.active_periods.iter().flatten() {
                if let Some([a, b]) = ranges.iter().find(|[a, b]| *a == 0 || a > b) {
                    return Err(CliError::Input(format!(
                        "strategies[{idx}].active_periods.{duty}: invalid interval [{a}, {b}]"
                    )));
                }
            }
        }
        if let Some(budget) = &self.budget {
            BudgetConstraint::new(budget.cap, budget.scope)?;
        }
        Ok(())
    }

    /// Resolves every reference; all dangling ids are reported together (exit 3).
    pub fn resolve(&self, panel: &SeriesPanel) -> Result<Scenario> {
        let mut problems = Vec::new();

        let mut declared = BTreeSet::new();
        for d in &self.duties {
            if !declared.insert(d.duty_id.as_str()) {
                problems.push(format!("duty `{}` declared twice", d.duty_id));
            }
        }
        let mut dangling = BTreeSet::new();
        for s in &self.strategies {
            let keys = s.active_periods.iter().flat_map(|m| m.keys());
            for id in s.duty_ids.iter().chain(keys) {
                if !declared.contains(id.as_str()) {
                    dangling.insert(id.clone());
                }
            }
        }
        let alt_duties: BTreeSet<&str> = self.strategies[1].duty_ids.iter().map(String::as_str).collect();
        for b in &self.blocks {
            if !declared.contains(b.duty_id.as_str()) {
                dangling.insert(b.duty_id.clone());
            } else if !alt_duties.contains(b.duty_id.as_str()) {
                problems.push(format!(
                    "blocked duty `{}` is not part of strategy `{}`",
                    b.duty_id, self.strategies[1].label
                ));
            }
        }
        if !dangling.is_empty() {
            problems.push(format!("undeclared duty ids: {}", join(&dangling)));
        }
        let unknown: BTreeSet<&String> = self
            .duties
            .iter()
            .flat_map(|d| &d.mapped_parameters)
            .filter(|p| panel.index_of(p).is_none())
            .collect();
        if !unknown.is_empty() {
            problems.push(format!("parameters missing from panel: {}", join(&unknown)));
        }
        for s in &self.strategies {
            for (duty, ranges) in s.active_periods.iter().flatten() {
                if let Some([_, b]) = ranges.iter().find(|[_, b]| *b > panel.t_max()) {
                    problems.push(format!(
                        "strategy `{}`: duty `{duty}` active up to period {b}, panel ends at {}",
                        s.label,
                        panel.t_max()
                    ));
                }
            }
        }
        if !problems.is_empty() {
            return Err(CliError::Semantic(format!(
                "scenario integrity violated: {}",
                problems.join("; ")
            )));
        }

        let spec = WindowSpec::new(self.window.k, self.window.mode)?;
        spec.validate_for(panel)?;
        let baseline = self.strategy(&self.strategies[0])?;
        let alternative = self.strategy(&self.strategies[1])?;
        let schedule = SanctionSchedule::new(
            self.blocks
                .iter()
                .map(|b| Block::new(b.duty_id.clone(), b.from, b.to))
                .collect(),
        )?;
        let budget = self
            .budget
            .as_ref()
            .map(|b| BudgetConstraint::new(b.cap, b.scope))
            .transpose()?;
        Ok(Scenario {
            spec,
            baseline,
            alternative,
            schedule,
            budget,
            economic: self.economic.clone(),
        })
    }

    fn strategy(&self, entry: &StrategyEntry) -> Result<Strategy> {
        let duties = entry
            .duty_ids
            .iter()
            .filter_map(|id| self.duties.iter().find(|d| &d.duty_id == id))
            .map(|d| Duty {
                duty_id: d.duty_id.clone(),
                position: d.position.clone(),
                description: d.description.clone(),
                mapped_parameters: d.mapped_parameters.iter().cloned().collect(),
                compliance: d.compliance.as_bool().unwrap_or(true),
            })
            .collect();
        let mut strategy = Strategy::new(entry.label.clone(), duties)?;
        for (duty, ranges) in entry.active_periods.iter().flatten() {
            let periods: Vec<usize> = ranges.iter().flat_map(|&[a, b]| a..=b).collect();
            strategy = strategy.with_active_periods(duty, periods)?;
        }
        Ok(strategy)
    }
}

fn join<T: AsRef<str>>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|s| format!("`{}`", s.as_ref()))
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCENARIO: &str = r#"
[window]
k = 3

[[duties]]
duty_id = "docs"
position = "Concept engineer"
description = "Providing technical documentation for the construction site"
mapped_parameters = ["a"]
compliance = 1

[[duties]]
duty_id = "specs"
mapped_parameters = ["a", "b"]
compliance = false

[[strategies]]
label = "V_1^6"
duty_ids = ["docs", "specs"]

[[strategies]]
label = "V_2^6"
duty_ids = ["docs", "specs"]
active_periods = { specs = [[1, 2], [4, 4]] }

[[blocks]]
duty_id = "docs"
from = 1
to = 2
"#;

    fn panel() -> SeriesPanel {
        SeriesPanel::from_series(
            vec!["a".into(), "b".into()],
            vec![vec![1.0, 2.0, 3.0, 4.0, 5.0], vec![5.0, 3.0, 4.0, 1.0, 2.0]],
        )
        .unwrap()
    }

    #[test]
    fn parses_and_resolves() {
        let file: ScenarioFile = toml::from_str(SCENARIO).unwrap();
        file.check_shape().unwrap();
        let s = file.resolve(&panel()).unwrap();
        assert_eq!(s.spec, WindowSpec::new(3, CorrelationMode::Pearson).unwrap());
        assert_eq!(s.baseline.label(), "V_1^6");
        assert!(!s.alternative.duty("specs").unwrap().compliance);
        assert!(s.alternative.is_active("specs", 4));
        assert!(!s.alternative.is_active("specs", 3));
        assert_eq!(s.schedule.blocks().len(), 1);
    }

    #[test]
    fn malformed_block_names_its_index() {
        let mut file: ScenarioFile = toml::from_str(SCENARIO).unwrap();
        file.blocks.push(BlockEntry { duty_id: "docs".into(), from: 5, to: 4 });
        let err = file.check_shape().unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("blocks[1]"), "{err}");
    }

    #[test]
    fn dangling_ids_are_all_listed() {
        let mut file: ScenarioFile = toml::from_str(SCENARIO).unwrap();
        file.strategies[0].duty_ids.push("ghost".into());
        file.blocks.push(BlockEntry { duty_id: "phantom".into(), from: 1, to: 1 });
        file.duties[0].mapped_parameters.push("zz".into());
        let err = file.resolve(&panel()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let msg = err.to_string();
        for id in ["ghost", "phantom", "zz"] {
            assert!(msg.contains(id), "{msg}");
        }
    }

    #[test]
    fn wrong_strategy_count_and_compliance() {
        let mut file: ScenarioFile = toml::from_str(SCENARIO).unwrap();
        file.strategies.pop();
        assert_eq!(file.check_shape().unwrap_err().exit_code(), 2);
        let mut file: ScenarioFile = toml::from_str(SCENARIO).unwrap();
        file.duties[0].compliance = Compliance::Number(2);
        assert_eq!(file.check_shape().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = SCENARIO.replace("k = 3", "k = 3\nwidth = 4");
        assert!(toml::from_str::<ScenarioFile>(&text).is_err());
    }

    #[test]
    fn block_outside_alternative_is_integrity_error() {
        let mut file: ScenarioFile = toml::from_str(SCENARIO).unwrap();
        file.strategies[1].duty_ids = vec!["specs".into()];
        let err = file.resolve(&panel()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
