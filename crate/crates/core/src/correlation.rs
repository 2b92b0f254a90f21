//! Windowed correlation matrices and the absolute row-sum indicator.
//!
//! Pearson coefficients are evaluated as centered cross products normalized
//! by the geometric mean of the two centered sums of squares, which equals
//! the product moment of the standardized columns divided by `k - 1`.
//! Columns whose window variance is numerically zero are degenerate: every
//! coefficient touching them, including the diagonal, is 0.

use rayon::prelude::*;

use crate::window::{CorrelationMode, WindowMatrix};

/// Relative threshold below which a window variance counts as zero.
pub const DEGENERATE_VARIANCE_RATIO: f64 = 1e-15;

/// Per-column window statistics computed directly from the window values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ColumnStats {
    pub mean: f64,
    /// Σ (x - mean)², two-pass.
    pub centered_ss: f64,
    /// Σ x².
    pub sum_sq: f64,
}

impl ColumnStats {
    pub fn from_values(values: &[f64]) -> Self {
        let k = values.len() as f64;
        let mean = values.iter().sum::<f64>() / k;
        let mut centered_ss = 0.0;
        let mut sum_sq = 0.0;
        for &v in values {
            let d = v - mean;
            centered_ss += d * d;
            sum_sq += v * v;
        }
        Self {
            mean,
            centered_ss,
            sum_sq,
        }
    }

    /// variance < 1e-15 · (mean square + 1), variance with divisor k-1.
    pub fn is_degenerate(&self, k: usize) -> bool {
        let variance = self.centered_ss / (k - 1) as f64;
        let mean_square = self.sum_sq / k as f64;
        variance < DEGENERATE_VARIANCE_RATIO * (mean_square + 1.0)
    }
}

/// A window transposed to column-major order and preprocessed for `mode`.
///
/// Pearson: columns are centered and carry their centered sum of squares.
/// Literal: columns are the raw window values.
pub(crate) struct PreparedWindow {
    k: usize,
    n: usize,
    mode: CorrelationMode,
    cols: Vec<f64>,
    norms: Vec<f64>,
    degenerate: Vec<bool>,
}

impl PreparedWindow {
    pub fn new(window: &WindowMatrix, mode: CorrelationMode) -> Self {
        let (k, n) = (window.k(), window.n());
        let mut cols = vec![0.0; k * n];
        for l in 0..k {
            for (i, &v) in window.row(l).iter().enumerate() {
                cols[i * k + l] = v;
            }
        }
        let mut norms = vec![0.0; n];
        let mut degenerate = vec![false; n];
        if mode == CorrelationMode::Pearson {
            for (i, col) in cols.chunks_exact_mut(k).enumerate() {
                let stats = ColumnStats::from_values(col);
                degenerate[i] = stats.is_degenerate(k);
                for v in col.iter_mut() {
                    *v -= stats.mean;
                }
                norms[i] = col.iter().map(|d| d * d).sum();
            }
        }
        Self {
            k,
            n,
            mode,
            cols,
            norms,
            degenerate,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn col(&self, i: usize) -> &[f64] {
        &self.cols[i * self.k..(i + 1) * self.k]
    }

    /// Coefficient r_ij. Symmetric bit-for-bit: r(i, j) == r(j, i).
    pub fn coefficient(&self, i: usize, j: usize) -> f64 {
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        match self.mode {
            CorrelationMode::Literal => dot(self.col(i), self.col(j)) / (self.k - 1) as f64,
            CorrelationMode::Pearson => {
                if self.degenerate[i] || self.degenerate[j] {
                    0.0
                } else if i == j {
                    1.0
                } else {
                    dot(self.col(i), self.col(j)) / (self.norms[i] * self.norms[j]).sqrt()
                }
            }
        }
    }

    /// G_i = Σ_j |r_ij|, summed in ascending j.
    pub fn row_abs_sum(&self, i: usize) -> f64 {
        (0..self.n).map(|j| self.coefficient(i, j).abs()).sum()
    }
}

/// The n×n coefficient matrix of one window.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    epoch: usize,
    n: usize,
    mode: CorrelationMode,
    entries: Vec<f64>,
}

impl CorrelationMatrix {
    pub fn epoch(&self) -> usize {
        self.epoch
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> CorrelationMode {
        self.mode
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// Computes the coefficient matrix of `window`.
///
/// The upper triangle is evaluated and mirrored, so the result is exactly
/// symmetric.
pub fn correlation_matrix(window: &WindowMatrix, mode: CorrelationMode) -> CorrelationMatrix {
    let prepared = PreparedWindow::new(window, mode);
    let n = prepared.n();
    let mut entries = vec![0.0; n * n];
    entries.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        for (j, slot) in row.iter_mut().enumerate().skip(i) {
            *slot = prepared.coefficient(i, j);
        }
    });
    for i in 0..n {
        for j in 0..i {
            entries[i * n + j] = entries[j * n + i];
        }
    }
    CorrelationMatrix {
        epoch: window.epoch(),
        n,
        mode,
        entries,
    }
}

/// G_i(t) = Σ_j |r_ij(t)| for every row, diagonal included.
pub fn indicator_row_sums(matrix: &CorrelationMatrix) -> Vec<f64> {
    (0..matrix.n())
        .map(|i| matrix.row(i).iter().map(|r| r.abs()).sum())
        .collect()
}
