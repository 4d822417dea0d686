//! The matrix of iterated window averages and its Cramer-rule solution.
//!
//! Row `k` (k = 1..rows) holds order-`k` iterated averages; columns are
//! `(Y, 1, X_1..X_n)` with an intercept, `(Y, X_1..X_n)` without. Entries are
//! stored window-local, i.e. divided by the row factor `L^(k-1) / (k-1)!`.
//! Cramer ratios do not see per-row factors, so coefficients come straight
//! from the stored entries; only the reported Wronskian is rescaled.

use super::panel::Model;
use crate::linalg::SquareMatrix;
use crate::series::order_scale;

#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    model: Model,
    rows: usize,
    target: Vec<f64>,
    unit: Option<Vec<f64>>,
    factors: Vec<Vec<f64>>,
    row_scale: Vec<f64>,
}

/// Dot product in twice the working precision (FMA two-product with
/// compensated accumulation).
fn dot2(pairs: &[(f64, f64)]) -> f64 {
    let (mut sum, mut err) = (0.0f64, 0.0f64);
    for &(a, b) in pairs {
        let p = a * b;
        let p_err = a.mul_add(b, -p);
        let s = sum + p;
        let z = s - sum;
        err += (sum - (s - z)) + (p - z) + p_err;
        sum = s;
    }
    sum + err
}

/// `(1/m) sum_{k=1}^{m} (k/m)^q` for `q = 0..orders`: the window-local
/// iterated averages of the unit series under the same quadrature as data.
pub(crate) fn unit_moments(m: usize, orders: usize) -> Vec<f64> {
    let mut acc = vec![0.0; orders];
    let inv_m = 1.0 / m as f64;
    for k in 1..=m {
        let s = k as f64 * inv_m;
        let mut w = 1.0;
        for a in acc.iter_mut() {
            *a += w;
            w *= s;
        }
    }
    acc.iter_mut().for_each(|a| *a *= inv_m);
    acc
}

impl DesignMatrix {
    /// Assembles from window-local moments (`moments[q]` for order `q + 1`).
    pub(crate) fn from_moments(
        model: Model,
        target: &[f64],
        unit: &[f64],
        factors: &[&[f64]],
        duration: f64,
    ) -> Self {
        let rows = model.rows(factors.len());
        let take = |v: &[f64]| v[..rows].to_vec();
        Self {
            model,
            rows,
            target: take(target),
            unit: matches!(model, Model::WithAlpha).then(|| take(unit)),
            factors: factors.iter().map(|f| take(f)).collect(),
            row_scale: (1..=rows).map(|k| order_scale(duration, k)).collect(),
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// `(rows, columns)`: `(n+1, n+2)` with intercept, `(n, n+1)` without.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.rows + 1)
    }

    /// Iterated-average value at `(row, column)` in `(Y, [1], X..)` order.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        let local = match (col, &self.unit) {
            (0, _) => self.target[row],
            (1, Some(u)) => u[row],
            (c, Some(_)) => self.factors[c - 2][row],
            (c, None) => self.factors[c - 1][row],
        };
        local * self.row_scale[row]
    }

    /// Square matrix without the target column, window-local entries.
    pub fn local_wronskian_matrix(&self) -> SquareMatrix {
        let mut cols: Vec<&[f64]> = Vec::with_capacity(self.rows);
        if let Some(u) = &self.unit {
            cols.push(u);
        }
        cols.extend(self.factors.iter().map(Vec::as_slice));
        SquareMatrix::from_columns(&cols)
    }

    /// Determinant of the iterated averages (the Wronskian-like determinant).
    pub fn wronskian(&self) -> f64 {
        let scale: f64 = self.row_scale.iter().product();
        self.local_wronskian_matrix().det() * scale
    }

    /// `|det| / prod(column norms)` on the window-local matrix; zero if a
    /// column vanishes.
    pub fn conditioning(&self) -> f64 {
        let w = self.local_wronskian_matrix();
        let norms: f64 = w.column_norms().iter().product();
        if norms == 0.0 || !norms.is_finite() {
            return 0.0;
        }
        let r = w.det().abs() / norms;
        if r.is_finite() {
            r
        } else {
            0.0
        }
    }

    /// Cramer's rule: each unknown is the determinant with its column
    /// replaced by `Y`, over the Wronskian. One refinement step follows,
    /// re-applying Cramer's rule to the residual `Y - W x` formed with
    /// error-free products, which pulls the result to the solution of the
    /// stored system even when it is ill-conditioned.
    /// Returns `(alpha, betas)`, or `None` when the Wronskian is exactly zero.
    pub fn solve(&self) -> Option<(Option<f64>, Vec<f64>)> {
        let w = self.local_wronskian_matrix();
        let det = w.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let cramer = |rhs: &[f64]| -> Vec<f64> {
            (0..self.rows)
                .map(|c| w.with_column(c, rhs).det() / det)
                .collect()
        };
        let mut x = cramer(&self.target);
        let residual: Vec<f64> = (0..self.rows)
            .map(|r| {
                let mut terms = Vec::with_capacity(self.rows + 1);
                terms.push((self.target[r], 1.0));
                terms.extend((0..self.rows).map(|c| (-w.get(r, c), x[c])));
                dot2(&terms)
            })
            .collect();
        if residual.iter().all(|v| v.is_finite()) {
            x.iter_mut()
                .zip(cramer(&residual))
                .for_each(|(a, d)| *a += d);
        }
        let alpha = self.unit.is_some().then(|| x.remove(0));
        Some((alpha, x))
    }

    /// Copy with every row multiplied by `factors[row]`.
    pub fn with_row_factors(&self, factors: &[f64]) -> Self {
        assert_eq!(factors.len(), self.rows);
        let scale = |v: &[f64]| {
            v.iter()
                .zip(factors)
                .map(|(a, f)| a * f)
                .collect::<Vec<_>>()
        };
        Self {
            model: self.model,
            rows: self.rows,
            target: scale(&self.target),
            unit: self.unit.as_deref().map(scale),
            factors: self.factors.iter().map(|c| scale(c)).collect(),
            row_scale: self.row_scale.clone(),
        }
    }
}
