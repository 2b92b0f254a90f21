//! The three subcommands. Each returns the text to print on success.

use std::path::Path;

use integral_core::{
    compare_strategies_with, generate_panel, indicator_trace_with, CorrelationMode, SynthConfig,
    TraceMethod, TraceOptions, WindowSpec,
};

use crate::error::{CliError, Result};
use crate::panel_csv::{read_panel, write_panel, write_to_path, write_trace};
use crate::plot::write_plots;
use crate::scenario::ScenarioFile;

pub fn read_synth_config(path: &Path) -> Result<SynthConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::read(path, e))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let config: SynthConfig = if is_json {
        serde_json::from_str(&text).map_err(|e| e.to_string())
    } else {
        toml::from_str(&text).map_err(|e| e.to_string())
    }
    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(config)
}

pub fn gen(config_path: &Path, out: &Path, seed: Option<u64>) -> Result<String> {
    let mut config = read_synth_config(config_path)?;
    if let Some(seed) = seed {
        config.seed = seed;
    }
    let panel = generate_panel(&config)?;
    write_to_path(out, |f| write_panel(&panel, f))?;
    Ok(format!("n={} t_max={} seed={}\n", panel.n(), panel.t_max(), config.seed))
}

pub fn analyze(
    panel_path: &Path,
    k: usize,
    mode: CorrelationMode,
    method: TraceMethod,
    out: &Path,
) -> Result<String> {
    let panel = read_panel(panel_path)?;
    let spec = WindowSpec::new(k, mode)?;
    let trace = indicator_trace_with(&panel, &spec, TraceOptions { method, compensated: false })?;
    write_to_path(out, |f| write_trace(&trace, panel.parameter_ids(), f))?;
    Ok(format!(
        "n={} t_max={} k={k} mode={mode} epochs={}\ng_total={}\n",
        panel.n(),
        panel.t_max(),
        trace.epochs().len(),
        trace.g_total()
    ))
}

pub fn compare(
    panel_path: &Path,
    scenario_path: &Path,
    out: &Path,
    plots: Option<&Path>,
) -> Result<String> {
    let panel = read_panel(panel_path)?;
    let file = ScenarioFile::read(scenario_path)?;
    let scenario = file.resolve(&panel)?;
    let comparison = compare_strategies_with(
        &panel,
        &scenario.baseline,
        &scenario.alternative,
        &scenario.schedule,
        &scenario.spec,
        scenario.budget.as_ref(),
        TraceOptions::default(),
    )?;
    let mut report = comparison.report;
    if !scenario.economic.is_empty() {
        report = report.with_economic(&scenario.economic);
    }
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Output(format!("cannot serialize report: {e}")))?;
    std::fs::write(out, json + "\n").map_err(|e| CliError::write(out, e))?;
    if let Some(dir) = plots {
        write_plots(&report, dir)?;
    }
    Ok(format!(
        "G[{}]={}\nG[{}]={}\ndelta_g={}\nblocked_cells={}\n",
        report.strategy_labels[0],
        report.g_values[0],
        report.strategy_labels[1],
        report.g_values[1],
        report.delta_g,
        report.blocked_cells
    ))
}
