//! Integral indicators G_i(t) over every epoch and the system indicator G.
//!
//! Two evaluation paths produce the same trace:
//!
//! * [`TraceMethod::Batch`] rebuilds each window and evaluates all
//!   coefficients from scratch (`O(k·n²)` per epoch).
//! * [`TraceMethod::Incremental`] keeps the Gram matrix of the window and
//!   slides it with a rank-2 update (`O(n²)` per epoch). In Pearson mode the
//!   Gram is taken over values shifted by each parameter's panel mean, and
//!   centered cross products are recovered from it together with the window
//!   sums.
//!
//! Both paths compute each G_i(t) with a sequential inner loop, so results do
//! not depend on the rayon thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlation::{ColumnStats, PreparedWindow};
use crate::error::Result;
use crate::gram::{sliding_gram_update, Gram};
use crate::panel::SeriesPanel;
use crate::window::{build_window, CorrelationMode, WindowSpec};

/// Which integral indicator a trace holds. Only the absolute row sum is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndicatorKind {
    #[default]
    AbsRowSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceMethod {
    Batch,
    #[default]
    Incremental,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TraceOptions {
    pub method: TraceMethod,
    /// Neumaier-compensated accumulation of G instead of plain summation.
    pub compensated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorTrace {
    kind: IndicatorKind,
    spec: WindowSpec,
    n: usize,
    epochs: Vec<usize>,
    g: Vec<f64>,
    g_total: f64,
}

impl IndicatorTrace {
    pub fn kind(&self) -> IndicatorKind {
        self.kind
    }

    pub fn spec(&self) -> WindowSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn epochs(&self) -> &[usize] {
        &self.epochs
    }

    /// G_i(t) for every parameter at the `idx`-th evaluated epoch.
    pub fn epoch_row(&self, idx: usize) -> &[f64] {
        &self.g[idx * self.n..(idx + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[f64])> {
        self.epochs.iter().copied().zip(self.g.chunks_exact(self.n))
    }

    /// Epoch-major flat matrix of G_i(t).
    pub fn g(&self) -> &[f64] {
        &self.g
    }

    pub fn g_total(&self) -> f64 {
        self.g_total
    }

    /// Σ_i G_i(t) per epoch.
    pub fn epoch_totals(&self) -> Vec<f64> {
        self.g.chunks_exact(self.n).map(|row| row.iter().sum()).collect()
    }

    /// Σ_t G_i(t) per parameter, in epoch order.
    pub fn parameter_totals(&self) -> Vec<f64> {
        let mut totals = vec![0.0; self.n];
        for row in self.g.chunks_exact(self.n) {
            for (acc, v) in totals.iter_mut().zip(row) {
                *acc += v;
            }
        }
        totals
    }
}

/// Evaluates the trace with default options (incremental path, plain summation).
pub fn indicator_trace(panel: &SeriesPanel, spec: &WindowSpec) -> Result<IndicatorTrace> {
    indicator_trace_with(panel, spec, TraceOptions::default())
}

pub fn indicator_trace_with(
    panel: &SeriesPanel,
    spec: &WindowSpec,
    options: TraceOptions,
) -> Result<IndicatorTrace> {
    spec.validate_for(panel)?;
    let epochs: Vec<usize> = spec.epochs(panel.t_max()).collect();
    let g = match options.method {
        TraceMethod::Batch => batch_rows(panel, spec, &epochs)?,
        TraceMethod::Incremental => incremental_rows(panel, spec, &epochs)?,
    };
    let g_total = if options.compensated {
        neumaier_sum(&g)
    } else {
        g.iter().sum()
    };
    Ok(IndicatorTrace {
        kind: IndicatorKind::AbsRowSum,
        spec: *spec,
        n: panel.n(),
        epochs,
        g,
        g_total,
    })
}

fn batch_rows(panel: &SeriesPanel, spec: &WindowSpec, epochs: &[usize]) -> Result<Vec<f64>> {
    let mut g = Vec::with_capacity(epochs.len() * panel.n());
    for &epoch in epochs {
        let window = build_window(panel, epoch, spec)?;
        let prepared = PreparedWindow::new(&window, spec.mode);
        let row: Vec<f64> = (0..panel.n())
            .into_par_iter()
            .map(|i| prepared.row_abs_sum(i))
            .collect();
        g.extend(row);
    }
    Ok(g)
}

fn incremental_rows(panel: &SeriesPanel, spec: &WindowSpec, epochs: &[usize]) -> Result<Vec<f64>> {
    let (n, k) = (panel.n(), spec.k);
    let shift: Vec<f64> = match spec.mode {
        CorrelationMode::Pearson => (0..n)
            .map(|i| panel.series(i).iter().sum::<f64>() / panel.t_max() as f64)
            .collect(),
        CorrelationMode::Literal => vec![0.0; n],
    };
    let shifted_row = |period: usize| -> Vec<f64> {
        (0..n).map(|i| panel.value(i, period) - shift[i]).collect()
    };

    let first = epochs[0];
    let initial: Vec<Vec<f64>> = (1..=k).map(|l| shifted_row(first - l)).collect();
    let mut gram = Gram::from_rows(n, initial.iter().map(Vec::as_slice))?;

    let mut g = Vec::with_capacity(epochs.len() * n);
    for &epoch in epochs {
        if epoch != first {
            sliding_gram_update(&mut gram, &shifted_row(epoch - 1 - k), &shifted_row(epoch - 1))?;
        }
        let columns = WindowColumns::new(panel, epoch, k, &shift, spec.mode, &gram);
        let row: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| columns.row_abs_sum(&gram, i))
            .collect();
        g.extend(row);
    }
    Ok(g)
}

/// Per-column quantities for one epoch of the incremental path.
struct WindowColumns {
    k: usize,
    mode: CorrelationMode,
    /// Σ over the window of the shifted values.
    shifted_sums: Vec<f64>,
    /// Pearson: centered sum of squares recovered from the Gram diagonal.
    norms: Vec<f64>,
    silent: Vec<bool>,
}

impl WindowColumns {
    fn new(
        panel: &SeriesPanel,
        epoch: usize,
        k: usize,
        shift: &[f64],
        mode: CorrelationMode,
        gram: &Gram,
    ) -> Self {
        let n = panel.n();
        let mut shifted_sums = vec![0.0; n];
        let mut norms = vec![0.0; n];
        let mut silent = vec![false; n];
        let mut buf = Vec::with_capacity(k);
        for i in 0..n {
            buf.clear();
            // Most recent first, matching the window row order of the batch path.
            buf.extend((1..=k).map(|l| panel.value(i, epoch - l)));
            let stats = ColumnStats::from_values(&buf);
            shifted_sums[i] = buf.iter().map(|v| v - shift[i]).sum();
            match mode {
                CorrelationMode::Literal => silent[i] = stats.sum_sq == 0.0,
                CorrelationMode::Pearson => {
                    let s = shifted_sums[i];
                    norms[i] = gram.get(i, i) - s * s / k as f64;
                    silent[i] = stats.is_degenerate(k) || norms[i] <= 0.0;
                }
            }
        }
        Self {
            k,
            mode,
            shifted_sums,
            norms,
            silent,
        }
    }

    fn row_abs_sum(&self, gram: &Gram, i: usize) -> f64 {
        if self.silent[i] {
            return 0.0;
        }
        let kf = self.k as f64;
        let row = gram.row(i);
        match self.mode {
            CorrelationMode::Literal => row
                .iter()
                .zip(&self.silent)
                .map(|(&g, &s)| if s { 0.0 } else { (g / (kf - 1.0)).abs() })
                .sum(),
            CorrelationMode::Pearson => {
                let si = self.shifted_sums[i];
                let ni = self.norms[i];
                row.iter()
                    .enumerate()
                    .map(|(j, &g)| {
                        if self.silent[j] {
                            0.0
                        } else if j == i {
                            1.0
                        } else {
                            let cross = g - si * self.shifted_sums[j] / kf;
                            (cross / (ni * self.norms[j]).sqrt()).abs()
                        }
                    })
                    .sum()
            }
        }
    }
}

/// Neumaier's improved Kahan summation.
pub fn neumaier_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}
