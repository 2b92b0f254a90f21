//! Synthetic enterprise panels from a latent factor model with step shocks.
//!
//! `value[i][t] = Σ_f loading[i][f]·factor[f][t] + noise[i][t]`, after which
//! every event multiplies its affected parameters from the event period
//! onward. All draws come from [`CounterRng`] keyed by coordinates, so the
//! panel is independent of evaluation order and thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::panel::SeriesPanel;
use crate::rng::CounterRng;

const STREAM_LOADING: u64 = 1;
const STREAM_FACTOR: u64 = 2;
const STREAM_NOISE: u64 = 3;
const STREAM_EVENT: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoadingMode {
    /// Normal draws scaled by `loading_scale`.
    #[default]
    Random,
    /// Every loading equals `loading_scale`.
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShockEvent {
    pub period: usize,
    /// Fraction of parameters affected, in [0, 1].
    pub fraction: f64,
    pub multiplier: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthConfig {
    pub n: usize,
    pub t_max: usize,
    pub m: usize,
    #[serde(default = "unit_scale")]
    pub loading_scale: f64,
    #[serde(default = "unit_scale")]
    pub noise_scale: f64,
    #[serde(default)]
    pub loadings: LoadingMode,
    #[serde(default)]
    pub events: Vec<ShockEvent>,
    pub seed: u64,
}

fn unit_scale() -> f64 {
    1.0
}

impl SynthConfig {
    pub fn new(n: usize, t_max: usize, m: usize, seed: u64) -> Self {
        Self {
            n,
            t_max,
            m,
            loading_scale: 1.0,
            noise_scale: 1.0,
            loadings: LoadingMode::Random,
            events: Vec::new(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |field, reason: String| Err(Error::InvalidConfig { field, reason });
        if self.n == 0 {
            return invalid("n", "must be at least 1".into());
        }
        if self.t_max == 0 {
            return invalid("t_max", "must be at least 1".into());
        }
        if self.m == 0 || self.m > self.n {
            return invalid("m", format!("must be in 1..={}, got {}", self.n, self.m));
        }
        if !(self.loading_scale.is_finite() && self.loading_scale > 0.0) {
            return invalid("loading_scale", format!("must be finite and > 0, got {}", self.loading_scale));
        }
        if !(self.noise_scale.is_finite() && self.noise_scale > 0.0) {
            return invalid("noise_scale", format!("must be finite and > 0, got {}", self.noise_scale));
        }
        for (idx, e) in self.events.iter().enumerate() {
            if e.period == 0 || e.period > self.t_max {
                return invalid(
                    "events",
                    format!("event {idx}: period {} outside 1..={}", e.period, self.t_max),
                );
            }
            if !(0.0..=1.0).contains(&e.fraction) {
                return invalid(
                    "events",
                    format!("event {idx}: fraction {} outside [0, 1]", e.fraction),
                );
            }
            if !e.multiplier.is_finite() {
                return invalid("events", format!("event {idx}: multiplier must be finite"));
            }
        }
        Ok(())
    }
}

/// Parameter ids `p1, p2, ...`, zero-padded to the width of `n`.
pub fn parameter_ids(n: usize) -> Vec<String> {
    let width = n.to_string().len();
    (1..=n).map(|i| format!("p{i:0width$}")).collect()
}

pub fn generate_panel(config: &SynthConfig) -> Result<SeriesPanel> {
    config.validate()?;
    let rng = CounterRng::new(config.seed);
    let (n, t_max, m) = (config.n, config.t_max, config.m);

    let factors: Vec<f64> = (0..m * t_max)
        .into_par_iter()
        .map(|idx| rng.normal(STREAM_FACTOR, (idx / t_max) as u64, (idx % t_max) as u64))
        .collect();

    let mut values = vec![0.0; n * t_max];
    values.par_chunks_mut(t_max).enumerate().for_each(|(i, row)| {
        let loadings: Vec<f64> = (0..m)
            .map(|f| match config.loadings {
                LoadingMode::Random => config.loading_scale * rng.normal(STREAM_LOADING, i as u64, f as u64),
                LoadingMode::Equal => config.loading_scale,
            })
            .collect();
        for (t, slot) in row.iter_mut().enumerate() {
            let common: f64 = loadings
                .iter()
                .enumerate()
                .map(|(f, l)| l * factors[f * t_max + t])
                .sum();
            *slot = common + config.noise_scale * rng.normal(STREAM_NOISE, i as u64, t as u64);
        }
        for (e_idx, event) in config.events.iter().enumerate() {
            if rng.uniform(STREAM_EVENT, e_idx as u64, i as u64, 0) < event.fraction {
                for v in &mut row[event.period - 1..] {
                    *v *= event.multiplier;
                }
            }
        }
    });
    SeriesPanel::from_parameter_major(parameter_ids(n), t_max, values)
}
