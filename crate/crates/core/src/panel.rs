//! The n×T panel of parameter values.
//!
//! Values are stored parameter-major: the series of parameter `i` is the
//! contiguous slice `values[i * t_max .. (i + 1) * t_max]`. Periods are the
//! implicit labels `1..=t_max`.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPanel {
    parameter_ids: Vec<String>,
    t_max: usize,
    values: Vec<f64>,
}

impl SeriesPanel {
    /// Builds a panel from one series per parameter.
    pub fn from_series(parameter_ids: Vec<String>, series: Vec<Vec<f64>>) -> Result<Self> {
        if series.len() != parameter_ids.len() {
            return Err(Error::InvalidPanel(format!(
                "{} parameter ids but {} series",
                parameter_ids.len(),
                series.len()
            )));
        }
        let t_max = series.first().map_or(0, Vec::len);
        if let Some((i, s)) = series.iter().enumerate().find(|(_, s)| s.len() != t_max) {
            return Err(Error::InvalidPanel(format!(
                "parameter `{}` has {} values, expected {t_max}",
                parameter_ids[i],
                s.len()
            )));
        }
        Self::from_parameter_major(parameter_ids, t_max, series.concat())
    }

    /// Builds a panel from a flat parameter-major buffer of `n * t_max` values.
    pub fn from_parameter_major(
        parameter_ids: Vec<String>,
        t_max: usize,
        values: Vec<f64>,
    ) -> Result<Self> {
        let n = parameter_ids.len();
        if n == 0 {
            return Err(Error::InvalidPanel("panel has no parameters".into()));
        }
        if t_max == 0 {
            return Err(Error::InvalidPanel("panel has no periods".into()));
        }
        if values.len() != n * t_max {
            return Err(Error::InvalidPanel(format!(
                "expected {} values for {n}×{t_max}, found {}",
                n * t_max,
                values.len()
            )));
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, id) in parameter_ids.iter().enumerate() {
            if let Some(prev) = seen.insert(id.as_str(), i) {
                return Err(Error::InvalidPanel(format!(
                    "duplicate parameter id `{id}` at columns {} and {}",
                    prev + 1,
                    i + 1
                )));
            }
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidPanel(format!(
                "non-finite value {} for parameter `{}` at period {}",
                values[pos],
                parameter_ids[pos / t_max],
                pos % t_max + 1
            )));
        }
        Ok(Self {
            parameter_ids,
            t_max,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.parameter_ids.len()
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn parameter_ids(&self) -> &[String] {
        &self.parameter_ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.parameter_ids.iter().position(|p| p == id)
    }

    /// Full series of parameter `i`, period 1 first.
    pub fn series(&self, i: usize) -> &[f64] {
        &self.values[i * self.t_max..(i + 1) * self.t_max]
    }

    /// Value of parameter `i` at the 1-based `period`.
    pub fn value(&self, i: usize, period: usize) -> f64 {
        debug_assert!((1..=self.t_max).contains(&period));
        self.values[i * self.t_max + period - 1]
    }

    /// Sum over all parameters at the 1-based `period`, in parameter order.
    pub fn period_total(&self, period: usize) -> f64 {
        (0..self.n()).map(|i| self.value(i, period)).sum()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Parameter-major mutable buffer; callers must keep every value finite.
    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("p{i}")).collect()
    }

    #[test]
    fn ragged_series_rejected() {
        let err = SeriesPanel::from_series(ids(2), vec![vec![1.0, 2.0], vec![1.0]]).unwrap_err();
        assert!(matches!(err, Error::InvalidPanel(msg) if msg.contains("p2")));
    }

    #[test]
    fn non_finite_rejected() {
        let err = SeriesPanel::from_series(ids(1), vec![vec![1.0, f64::NAN]]).unwrap_err();
        assert!(matches!(err, Error::InvalidPanel(msg) if msg.contains("period 2")));
        assert!(SeriesPanel::from_series(ids(1), vec![vec![f64::INFINITY]]).is_err());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let err = SeriesPanel::from_series(
            vec!["a".into(), "a".into()],
            vec![vec![1.0], vec![2.0]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidPanel(msg) if msg.contains("duplicate")));
    }

    #[test]
    fn empty_rejected() {
        assert!(SeriesPanel::from_series(vec![], vec![]).is_err());
        assert!(SeriesPanel::from_series(ids(1), vec![vec![]]).is_err());
    }

    #[test]
    fn accessors_are_one_based_in_period() {
        let p = SeriesPanel::from_series(ids(2), vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]])
            .unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(p.t_max(), 3);
        assert_eq!(p.value(1, 1), 4.0);
        assert_eq!(p.series(0), &[1.0, 2.0, 3.0]);
        assert_eq!(p.period_total(3), 9.0);
        assert_eq!(p.index_of("p2"), Some(1));
    }
}
