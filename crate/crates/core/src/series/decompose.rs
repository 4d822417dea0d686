//! Trend / quick-fluctuation split `X = E(X) + X_fluct`.
//!
//! `E(X)` is the causal trailing-window mean: at index `j` it averages the
//! `m` samples before `j`. The first `m` points have no full window; they use
//! whatever history exists and are flagged as warm-up.

use super::grid::{Role, TimeSeries, WindowSpec};
use super::sliding::SlidingMoments;
use crate::error::{Error, Result};

pub(crate) fn trailing_mean(values: &[f64], m: usize) -> Vec<f64> {
    let n = values.len();
    let mut out = Vec::with_capacity(n);
    let mut running = 0.0;
    for j in 0..n.min(m) {
        if j == 0 {
            out.push(values[0]);
        } else {
            out.push(running / j as f64);
        }
        running += values[j];
    }
    if n > m {
        let table = SlidingMoments::new(values, m, 1);
        out.extend((m..n).map(|j| table.query(j)[0]));
    }
    out
}

/// Trailing-window mean `E(X)`.
pub fn trend(series: &TimeSeries, window: WindowSpec) -> Result<TimeSeries> {
    let m = window.samples();
    if series.is_empty() || series.len() < m {
        return Err(Error::EmptySeries);
    }
    let values = trailing_mean(series.values(), m);
    Ok(
        TimeSeries::with_role(*series.grid(), values, Role::Trend)?
            .with_warmup(series.warmup() + m),
    )
}

/// `X - E(X)`.
pub fn fluctuation(series: &TimeSeries, window: WindowSpec) -> Result<TimeSeries> {
    let t = trend(series, window)?;
    Ok(series
        .zip_with(&t, |x, e| x - e)?
        .set_role(Role::Fluctuation))
}

/// Both halves of the decomposition from one trend pass.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub trend: TimeSeries,
    pub fluctuation: TimeSeries,
}

pub fn decompose(series: &TimeSeries, window: WindowSpec) -> Result<Decomposition> {
    let trend = trend(series, window)?;
    let fluctuation = series
        .zip_with(&trend, |x, e| x - e)?
        .set_role(Role::Fluctuation);
    Ok(Decomposition { trend, fluctuation })
}
