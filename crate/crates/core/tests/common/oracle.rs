//! Brute-force reference implementation of the indicator definitions.
//!
//! Deliberately naive: windows are rebuilt per epoch, Pearson coefficients
//! go through explicit z-scores, and every sum is a plain loop. Shares no
//! code with the library.

#![allow(dead_code)]

/// `series[i][t - 1]` is parameter `i` at period `t`.
pub type Series = Vec<Vec<f64>>;

pub fn read_panel_csv(text: &str) -> (Vec<String>, Series) {
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').skip(1).map(String::from).collect();
    let mut series = vec![Vec::new(); header.len()];
    for line in lines.filter(|l| !l.trim().is_empty()) {
        for (i, cell) in line.split(',').skip(1).enumerate() {
            series[i].push(cell.trim().parse::<f64>().unwrap());
        }
    }
    (header, series)
}

/// Row `l - 1` holds period `t - l`.
pub fn window(series: &Series, t: usize, k: usize) -> Vec<Vec<f64>> {
    (1..=k)
        .map(|l| series.iter().map(|s| s[t - l - 1]).collect())
        .collect()
}

pub fn literal_matrix(win: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = win.len();
    let n = win[0].len();
    let mut r = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for row in win {
                s += row[i] * row[j];
            }
            r[i][j] = s / (k as f64 - 1.0);
        }
    }
    r
}

pub fn pearson_matrix(win: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = win.len();
    let n = win[0].len();
    let kf = k as f64;
    let mut z = vec![vec![0.0; n]; k];
    let mut degenerate = vec![false; n];
    for i in 0..n {
        let mean = win.iter().map(|row| row[i]).sum::<f64>() / kf;
        let var = win.iter().map(|row| (row[i] - mean).powi(2)).sum::<f64>() / (kf - 1.0);
        let mean_sq = win.iter().map(|row| row[i] * row[i]).sum::<f64>() / kf;
        degenerate[i] = var < 1e-15 * (mean_sq + 1.0);
        let sd = var.sqrt();
        for l in 0..k {
            z[l][i] = if degenerate[i] { 0.0 } else { (win[l][i] - mean) / sd };
        }
    }
    literal_matrix(&z)
}

pub fn matrix(win: &[Vec<f64>], pearson: bool) -> Vec<Vec<f64>> {
    if pearson {
        pearson_matrix(win)
    } else {
        literal_matrix(win)
    }
}

/// G_i(t) for t = k+1 ..= T+1 and their double sum.
pub fn trace(series: &Series, k: usize, pearson: bool) -> (Vec<Vec<f64>>, f64) {
    let t_max = series[0].len();
    let mut g = Vec::new();
    let mut total = 0.0;
    for t in k + 1..=t_max + 1 {
        let r = matrix(&window(series, t, k), pearson);
        let row: Vec<f64> = r.iter().map(|ri| ri.iter().map(|v| v.abs()).sum()).collect();
        total += row.iter().sum::<f64>();
        g.push(row);
    }
    (g, total)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
