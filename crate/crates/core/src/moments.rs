//! Rolling covariance, variance and volatility built on the trend operator:
//!
//! ```text
//! cov(X, Y) = E(XY) - E(X) E(Y)
//! var(X)    = E(X^2) - E(X)^2
//! vol(X)    = sqrt(var(X))
//! ```
//!
//! `E` is [`crate::series::trend`] with one shared window. Inputs are shifted by
//! their global mean before the products are formed; covariance is invariant
//! under the shift and the cancellation in `E(X^2) - E(X)^2` shrinks.

use crate::error::{Error, Result};
use crate::series::{trailing_mean, Role, TimeSeries, WindowSpec};

/// A rolling second-moment series and the window that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSeries {
    pub series: TimeSeries,
    pub window: WindowSpec,
    /// Points where floating cancellation produced a negative variance that
    /// was clamped to zero.
    pub clamped: usize,
}

impl MomentSeries {
    pub fn values(&self) -> &[f64] {
        self.series.values()
    }

    pub fn into_series(self) -> TimeSeries {
        self.series
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn check_len(x: &TimeSeries, window: WindowSpec) -> Result<()> {
    if x.is_empty() || x.len() < window.samples() {
        return Err(Error::EmptySeries);
    }
    Ok(())
}

/// Rolling covariance `E(XY) - E(X) E(Y)`.
pub fn rolling_cov(x: &TimeSeries, y: &TimeSeries, window: WindowSpec) -> Result<MomentSeries> {
    if !x.grid().same_as(y.grid()) {
        return Err(Error::GridMismatch);
    }
    check_len(x, window)?;
    let m = window.samples();
    let (cx, cy) = (mean(x.values()), mean(y.values()));
    let xs: Vec<f64> = x.values().iter().map(|v| v - cx).collect();
    let ys: Vec<f64> = y.values().iter().map(|v| v - cy).collect();
    let xy: Vec<f64> = xs.iter().zip(&ys).map(|(a, b)| a * b).collect();
    let (ex, ey, exy) = (
        trailing_mean(&xs, m),
        trailing_mean(&ys, m),
        trailing_mean(&xy, m),
    );
    let values = exy
        .iter()
        .zip(ex.iter().zip(&ey))
        .map(|(p, (a, b))| p - a * b)
        .collect();
    let warmup = x.warmup().max(y.warmup()) + m;
    Ok(MomentSeries {
        series: TimeSeries::new(*x.grid(), values)?.with_warmup(warmup),
        window,
        clamped: 0,
    })
}

/// Rolling variance `E(X^2) - E(X)^2`, clamped at zero.
pub fn rolling_var(x: &TimeSeries, window: WindowSpec) -> Result<MomentSeries> {
    check_len(x, window)?;
    let m = window.samples();
    let c = mean(x.values());
    let xs: Vec<f64> = x.values().iter().map(|v| v - c).collect();
    let sq: Vec<f64> = xs.iter().map(|v| v * v).collect();
    let (ex, ex2) = (trailing_mean(&xs, m), trailing_mean(&sq, m));
    let mut clamped = 0;
    let values = ex2
        .iter()
        .zip(&ex)
        .map(|(s, e)| {
            let v = s - e * e;
            if v < 0.0 {
                clamped += 1;
                0.0
            } else {
                v
            }
        })
        .collect();
    Ok(MomentSeries {
        series: TimeSeries::new(*x.grid(), values)?.with_warmup(x.warmup() + m),
        window,
        clamped,
    })
}

/// Volatility time series `sqrt(var(X))`.
pub fn volatility(x: &TimeSeries, window: WindowSpec) -> Result<MomentSeries> {
    let var = rolling_var(x, window)?;
    let warmup = var.series.warmup();
    let values = var.values().iter().map(|v| v.sqrt()).collect();
    Ok(MomentSeries {
        series: TimeSeries::with_role(*x.grid(), values, Role::Volatility)?.with_warmup(warmup),
        window,
        clamped: var.clamped,
    })
}
