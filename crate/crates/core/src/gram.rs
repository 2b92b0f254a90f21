//! Dense Gram matrix `XᵀX` of a sliding window with rank-2 updates.

use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Gram {
    n: usize,
    entries: Vec<f64>,
}

impl Gram {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![0.0; n * n],
        }
    }

    /// Σ over `rows` of rowᵀ·row, accumulated in row order.
    pub fn from_rows<'a, I>(n: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let rows: Vec<&[f64]> = rows.into_iter().collect();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: bad.len(),
            });
        }
        let mut gram = Self::zeros(n);
        gram.entries.par_chunks_mut(n.max(1)).enumerate().for_each(|(i, out)| {
            for row in &rows {
                let xi = row[i];
                for (slot, &xj) in out.iter_mut().zip(row.iter()) {
                    *slot += xi * xj;
                }
            }
        });
        Ok(gram)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// Slides the window by one row: `gram += row_inᵀ·row_in − row_outᵀ·row_out`.
///
/// Each entry is updated as `g + (in_i·in_j − out_i·out_j)`, so entries whose
/// outgoing and incoming products coincide are left bit-identical.
pub fn sliding_gram_update(gram: &mut Gram, row_out: &[f64], row_in: &[f64]) -> Result<()> {
    let n = gram.n;
    for row in [row_out, row_in] {
        if row.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: row.len(),
            });
        }
    }
    if n == 0 {
        return Ok(());
    }
    gram.entries.par_chunks_mut(n).enumerate().for_each(|(i, out)| {
        let (oi, ii) = (row_out[i], row_in[i]);
        for ((slot, &oj), &ij) in out.iter_mut().zip(row_out).zip(row_in) {
            *slot += ii * ij - oi * oj;
        }
    });
    Ok(())
}
