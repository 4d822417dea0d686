#![allow(dead_code)]

use wronbeta_core::linalg::SquareMatrix;
use wronbeta_core::series::{SamplingGrid, TimeSeries, WindowSpec};
use wronbeta_core::FactorPanel;

/// Iterated average straight from the definition, in absolute time:
/// `1 / (L (nu-1)!) * sum_{t_i in [t-L, t)} (t - t_i)^(nu-1) X(t_i) dt`.
pub fn brute_iterated(series: &TimeSeries, nu: usize, window: WindowSpec, t: f64) -> f64 {
    let g = series.grid();
    let l = window.duration(g);
    let fact: f64 = (1..nu).map(|k| k as f64).product();
    let mut sum = 0.0;
    for i in 0..g.count() {
        let ti = g.time(i);
        if ti >= t - l - 1e-9 * g.step() && ti < t - 1e-9 * g.step() {
            sum += (t - ti).powi(nu as i32 - 1) * series.values()[i] * g.step();
        }
    }
    sum / (l * fact)
}

/// Unit column entry under the same quadrature.
pub fn brute_unit(g: &SamplingGrid, nu: usize, window: WindowSpec, t: f64) -> f64 {
    let one = TimeSeries::from_fn(*g, |_| 1.0).unwrap();
    brute_iterated(&one, nu, window, t)
}

/// Wronskian matrix columns by brute force: optional unit column, then factors.
pub fn brute_columns(
    panel: &FactorPanel,
    window: WindowSpec,
    t: f64,
    with_one: bool,
) -> Vec<Vec<f64>> {
    let n = panel.n_factors();
    let rows = if with_one { n + 1 } else { n };
    let mut cols = Vec::new();
    if with_one {
        cols.push(
            (1..=rows)
                .map(|k| brute_unit(panel.grid(), k, window, t))
                .collect(),
        );
    }
    for f in panel.factors() {
        cols.push(
            (1..=rows)
                .map(|k| brute_iterated(f, k, window, t))
                .collect(),
        );
    }
    cols
}

pub fn brute_target(panel: &FactorPanel, window: WindowSpec, t: f64, rows: usize) -> Vec<f64> {
    (1..=rows)
        .map(|k| brute_iterated(panel.target(), k, window, t))
        .collect()
}

pub fn cofactor_det(cols: &[Vec<f64>]) -> f64 {
    let refs: Vec<&[f64]> = cols.iter().map(Vec::as_slice).collect();
    SquareMatrix::from_columns(&refs).det_cofactor()
}

/// Cramer's rule with cofactor determinants; returns all unknowns in column order.
pub fn brute_cramer(cols: &[Vec<f64>], rhs: &[f64]) -> Vec<f64> {
    let d = cofactor_det(cols);
    (0..cols.len())
        .map(|i| {
            let mut c = cols.to_vec();
            c[i] = rhs.to_vec();
            cofactor_det(&c) / d
        })
        .collect()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

pub fn series(g: SamplingGrid, f: impl Fn(f64) -> f64) -> TimeSeries {
    TimeSeries::from_fn(g, f).unwrap()
}

pub fn alternating(g: SamplingGrid, amp: f64) -> TimeSeries {
    TimeSeries::new(
        g,
        (0..g.count())
            .map(|i| if i % 2 == 0 { amp } else { -amp })
            .collect(),
    )
    .unwrap()
}

/// 1-norm condition number by Gauss-Jordan inversion.
pub fn condition_number(m: &SquareMatrix) -> f64 {
    let n = m.dim();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|r| {
            let mut row: Vec<f64> = (0..n).map(|c| m.get(r, c)).collect();
            row.extend((0..n).map(|c| if c == r { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .unwrap();
        if a[p][k] == 0.0 {
            return f64::INFINITY;
        }
        a.swap(k, p);
        let piv = a[k][k];
        a[k].iter_mut().for_each(|v| *v /= piv);
        for r in 0..n {
            if r != k {
                let f = a[r][k];
                let pivot_row = a[k].clone();
                a[r].iter_mut()
                    .zip(&pivot_row)
                    .for_each(|(v, p)| *v -= f * p);
            }
        }
    }
    let norm1 = |get: &dyn Fn(usize, usize) -> f64| {
        (0..n)
            .map(|c| (0..n).map(|r| get(r, c).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    norm1(&|r, c| m.get(r, c)) * norm1(&|r, c| a[r][n + c])
}
