//! Single-point estimation by direct evaluation of every window sum.

use super::design::{unit_moments, DesignMatrix};
use super::panel::{BetaEstimate, FactorPanel, IndependenceThreshold, Model};
use crate::error::{Error, Result};
use crate::series::{check_window, local_moments_direct, TimeSeries, WindowSpec};

fn check_rows(model: Model, n: usize, window: WindowSpec) -> Result<()> {
    let rows = model.rows(n);
    if rows > window.samples() {
        return Err(Error::InvalidWindow(format!(
            "{rows} equations need a window of at least {rows} samples, got {}",
            window.samples()
        )));
    }
    Ok(())
}

/// Design matrix at grid index `j` from direct O(m) sums.
pub(crate) fn design_at(
    panel: &FactorPanel,
    window: WindowSpec,
    j: usize,
    model: Model,
) -> Result<DesignMatrix> {
    check_rows(model, panel.n_factors(), window)?;
    check_window(j, window, panel.first_clean())?;
    let m = window.samples();
    let rows = model.rows(panel.n_factors());
    let target = local_moments_direct(panel.target().values(), j, m, rows);
    let factors: Vec<Vec<f64>> = panel
        .factors()
        .iter()
        .map(|f| local_moments_direct(f.values(), j, m, rows))
        .collect();
    let refs: Vec<&[f64]> = factors.iter().map(Vec::as_slice).collect();
    Ok(DesignMatrix::from_moments(
        model,
        &target,
        &unit_moments(m, rows),
        &refs,
        window.duration(panel.grid()),
    ))
}

/// Design matrix at time `t`.
pub fn design_matrix(
    panel: &FactorPanel,
    window: WindowSpec,
    t: f64,
    model: Model,
) -> Result<DesignMatrix> {
    let j = panel.grid().index_of(t)?;
    design_at(panel, window, j, model)
}

/// Builds an estimate from an assembled design matrix. Coefficients are
/// dropped when the conditioning is below the threshold.
pub(crate) fn estimate_from(
    design: &DesignMatrix,
    panel: &FactorPanel,
    window: WindowSpec,
    j: usize,
    thr: IndependenceThreshold,
) -> BetaEstimate {
    let conditioning = design.conditioning();
    let solution = (conditioning >= thr.epsilon())
        .then(|| design.solve())
        .flatten()
        .filter(|(a, b)| a.is_none_or(f64::is_finite) && b.iter().all(|v| v.is_finite()));
    let independent = solution.is_some();
    let (alpha, betas) = solution.unwrap_or((None, Vec::new()));
    BetaEstimate {
        model: design.model(),
        alpha,
        betas,
        wronskian: design.wronskian(),
        conditioning,
        window,
        at: panel.grid().time(j),
        index: j,
        independent,
        residual_integral: None,
    }
}

pub(crate) fn require_independent(
    est: BetaEstimate,
    thr: IndependenceThreshold,
) -> Result<BetaEstimate> {
    if est.independent {
        Ok(est)
    } else {
        Err(Error::NotIndependent {
            at: est.at,
            ratio: est.conditioning,
            epsilon: thr.epsilon(),
        })
    }
}

/// Estimate at `t` for either model; fails with `NotIndependent` when the
/// Wronskian is not appreciable.
pub fn estimate(
    panel: &FactorPanel,
    window: WindowSpec,
    t: f64,
    model: Model,
    thr: IndependenceThreshold,
) -> Result<BetaEstimate> {
    let j = panel.grid().index_of(t)?;
    let design = design_at(panel, window, j, model)?;
    require_independent(estimate_from(&design, panel, window, j, thr), thr)
}

/// `alpha(L, t)` and `beta_i(L, t)` of `Y = alpha + sum beta_i X_i`.
pub fn estimate_alpha_betas(
    panel: &FactorPanel,
    window: WindowSpec,
    t: f64,
    thr: IndependenceThreshold,
) -> Result<BetaEstimate> {
    estimate(panel, window, t, Model::WithAlpha, thr)
}

/// `beta_i(L, t)` of `Y = sum beta_i X_i`.
pub fn estimate_betas(
    panel: &FactorPanel,
    window: WindowSpec,
    t: f64,
    thr: IndependenceThreshold,
) -> Result<BetaEstimate> {
    estimate(panel, window, t, Model::BetasOnly, thr)
}

/// Determinant with the unit column: `(n+1) x (n+1)`, orders `1..=n+1`.
pub fn wronskian_with_one(panel: &FactorPanel, window: WindowSpec, t: f64) -> Result<f64> {
    Ok(design_matrix(panel, window, t, Model::WithAlpha)?.wronskian())
}

/// Determinant of the factors alone: `n x n`, orders `1..=n`.
pub fn wronskian(panel: &FactorPanel, window: WindowSpec, t: f64) -> Result<f64> {
    Ok(design_matrix(panel, window, t, Model::BetasOnly)?.wronskian())
}

fn residual_terms(panel: &FactorPanel, est: &BetaEstimate) -> Result<(usize, usize)> {
    let grid = panel.grid();
    let j = grid.index_of(est.at).map_err(|_| {
        Error::EstimateMismatch(format!("time {} is not on the panel grid", est.at))
    })?;
    if j != est.index {
        return Err(Error::EstimateMismatch(format!(
            "estimate index {} does not match time {}",
            est.index, est.at
        )));
    }
    let m = est.window.samples();
    if j < m {
        return Err(Error::EstimateMismatch("window precedes the grid".into()));
    }
    if !est.independent || est.betas.len() != panel.n_factors() {
        return Err(Error::EstimateMismatch(format!(
            "estimate carries {} coefficients for {} factors",
            est.betas.len(),
            panel.n_factors()
        )));
    }
    Ok((j, m))
}

/// `integral over [t-L, t) of (t - tau)^(order-1) e(tau)` with
/// `e = Y - alpha - sum beta_i X_i` (`alpha = 0` without intercept).
///
/// Order 1 is the plain residual integral.
pub fn residual_moment(panel: &FactorPanel, est: &BetaEstimate, order: usize) -> Result<f64> {
    let (j, m) = residual_terms(panel, est)?;
    if order == 0 {
        return Err(Error::InvalidOrder);
    }
    let step = panel.grid().step();
    let alpha = est.alpha.unwrap_or(0.0);
    let y = panel.target().values();
    let xs: Vec<&[f64]> = panel.factors().iter().map(TimeSeries::values).collect();
    let sum: f64 = (1..=m)
        .map(|k| {
            let i = j - k;
            let fit: f64 = alpha
                + est
                    .betas
                    .iter()
                    .zip(&xs)
                    .map(|(b, x)| b * x[i])
                    .sum::<f64>();
            (k as f64 * step).powi(order as i32 - 1) * (y[i] - fit)
        })
        .sum();
    Ok(sum * step)
}

/// `integral over [t-L, t) of e(tau)`.
pub fn residual_integral(panel: &FactorPanel, est: &BetaEstimate) -> Result<f64> {
    residual_moment(panel, est, 1)
}

impl BetaEstimate {
    /// Fills `residual_integral` from `panel`.
    pub fn with_residual(mut self, panel: &FactorPanel) -> Result<Self> {
        self.residual_integral = Some(residual_integral(panel, &self)?);
        Ok(self)
    }
}

/// Double-smoothed single-factor ratio
/// `int_{t-L}^{t} avg(num) / int_{t-L}^{t} avg(den)`, where `avg` is the
/// trailing window average. Needs two window lengths of history before `t`.
pub fn monofactor_ratio_beta(
    num: &TimeSeries,
    den: &TimeSeries,
    window: WindowSpec,
    t: f64,
) -> Result<f64> {
    if !num.grid().same_as(den.grid()) {
        return Err(Error::GridMismatch);
    }
    let j = num.grid().index_of(t)?;
    let m = window.samples();
    let first = num.warmup().max(den.warmup()) + m;
    check_window(j, window, first)?;
    let smoothed_sum = |v: &[f64]| -> (f64, f64) {
        (j - m..j).fold((0.0, 0.0), |(s, a), i| {
            let avg = v[i - m..i].iter().sum::<f64>() / m as f64;
            (s + avg, a + avg.abs())
        })
    };
    let (top, _) = smoothed_sum(num.values());
    let (bottom, bottom_abs) = smoothed_sum(den.values());
    if bottom.abs() <= 8.0 * f64::EPSILON * bottom_abs || bottom == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(top / bottom)
}

/// Inverts `Y = alpha + beta X` into `X = -alpha/beta + (1/beta) Y`.
pub fn reverse_monofactor(alpha: f64, beta: f64) -> Result<(f64, f64)> {
    if beta == 0.0 || !beta.is_finite() {
        return Err(Error::ZeroBeta);
    }
    Ok((-alpha / beta, 1.0 / beta))
}
