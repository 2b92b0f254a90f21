//! Trailing windows over the panel.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::panel::SeriesPanel;

/// How window entries are turned into coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationMode {
    /// Columns are standardized inside the window before taking product moments.
    #[default]
    Pearson,
    /// Raw, uncentered product moments divided by `k - 1`.
    Literal,
}

impl fmt::Display for CorrelationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pearson => "pearson",
            Self::Literal => "literal",
        })
    }
}

impl FromStr for CorrelationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pearson" => Ok(Self::Pearson),
            "literal" => Ok(Self::Literal),
            other => Err(Error::InvalidWindow(format!(
                "unknown mode `{other}` (expected pearson or literal)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub k: usize,
    #[serde(default)]
    pub mode: CorrelationMode,
}

impl WindowSpec {
    pub fn new(k: usize, mode: CorrelationMode) -> Result<Self> {
        let spec = Self { k, mode };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidWindow(format!(
                "window length k={} must be at least 2",
                self.k
            )));
        }
        Ok(())
    }

    /// Checks the spec against a panel: `2 <= k <= T_max`.
    pub fn validate_for(&self, panel: &SeriesPanel) -> Result<()> {
        self.validate()?;
        if self.k > panel.t_max() {
            return Err(Error::InsufficientData {
                k: self.k,
                t_max: panel.t_max(),
            });
        }
        Ok(())
    }

    /// All analysis epochs `k+1 ..= T_max+1` for a panel of `t_max` periods.
    pub fn epochs(&self, t_max: usize) -> std::ops::RangeInclusive<usize> {
        self.k + 1..=t_max + 1
    }
}

/// The k×n matrix of the k periods preceding `epoch`, most recent first.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowMatrix {
    epoch: usize,
    k: usize,
    n: usize,
    rows: Vec<f64>,
}

impl WindowMatrix {
    /// Builds a window directly from row-major data (row 0 = period `epoch - 1`).
    pub fn from_rows(epoch: usize, k: usize, n: usize, rows: Vec<f64>) -> Result<Self> {
        if rows.len() != k * n {
            return Err(Error::Dimension {
                expected: k * n,
                found: rows.len(),
            });
        }
        if k < 2 {
            return Err(Error::InvalidWindow(format!("window has {k} rows, need at least 2")));
        }
        Ok(Self { epoch, k, n, rows })
    }

    pub fn epoch(&self) -> usize {
        self.epoch
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row `l` (0-based) holds the panel at period `epoch - 1 - l`.
    pub fn row(&self, l: usize) -> &[f64] {
        &self.rows[l * self.n..(l + 1) * self.n]
    }

    /// The `k` window values of parameter `i`, most recent first.
    pub fn column(&self, i: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.k).map(move |l| self.rows[l * self.n + i])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.rows
    }
}

/// Extracts the window for `epoch`: rows are periods `t-1, t-2, ..., t-k`.
pub fn build_window(panel: &SeriesPanel, epoch: usize, spec: &WindowSpec) -> Result<WindowMatrix> {
    spec.validate()?;
    let k = spec.k;
    if epoch < k + 1 || epoch > panel.t_max() + 1 {
        return Err(Error::EpochRange {
            epoch,
            k,
            t_max: panel.t_max(),
        });
    }
    let n = panel.n();
    let mut rows = Vec::with_capacity(k * n);
    for l in 1..=k {
        let period = epoch - l;
        rows.extend((0..n).map(|i| panel.value(i, period)));
    }
    Ok(WindowMatrix {
        epoch,
        k,
        n,
        rows,
    })
}
