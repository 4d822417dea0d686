//! Several window lengths evaluated side by side; the best-conditioned
//! Wronskian wins.

use super::design::DesignMatrix;
use super::estimate::{design_at, estimate_from};
use super::panel::{BetaEstimate, FactorPanel, IndependenceThreshold, Model};
use super::rolling::RollingEngine;
use crate::error::{Error, Result};
use crate::series::WindowSpec;

/// Index of the best candidate: largest conditioning, ties to the longer
/// window. `None` if nothing clears the threshold.
fn select(
    candidates: &[(WindowSpec, DesignMatrix, f64)],
    thr: IndependenceThreshold,
) -> Option<usize> {
    candidates
        .iter()
        .enumerate()
        .filter(|(_, (_, _, c))| *c >= thr.epsilon())
        .max_by(|(_, a), (_, b)| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
}

fn check_windows(windows: &[WindowSpec]) -> Result<()> {
    if windows.is_empty() {
        return Err(Error::InvalidWindow("no candidate windows".into()));
    }
    Ok(())
}

/// Estimate at `t` using whichever window gives the best-conditioned
/// determinant. The result equals the single-window estimate of the chosen
/// window.
pub fn multiwindow_estimate(
    panel: &FactorPanel,
    windows: &[WindowSpec],
    t: f64,
    model: Model,
    thr: IndependenceThreshold,
) -> Result<BetaEstimate> {
    check_windows(windows)?;
    let j = panel.grid().index_of(t)?;
    let candidates = windows
        .iter()
        .map(|&w| {
            let d = design_at(panel, w, j, model)?;
            let c = d.conditioning();
            Ok((w, d, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let best = select(&candidates, thr).ok_or(Error::AllDegenerate { at: t })?;
    let (w, design, _) = &candidates[best];
    let est = estimate_from(design, panel, *w, j, thr);
    if !est.independent {
        return Err(Error::AllDegenerate { at: t });
    }
    Ok(est)
}

/// Rolling form of [`multiwindow_estimate`] over indices where every window
/// is full. Points where every window is degenerate are kept as flagged gaps
/// reported against the best-conditioned window.
pub fn rolling_multiwindow(
    panel: &FactorPanel,
    windows: &[WindowSpec],
    model: Model,
    thr: IndependenceThreshold,
) -> Result<Vec<BetaEstimate>> {
    check_windows(windows)?;
    let engines = windows
        .iter()
        .map(|&w| RollingEngine::new(panel, w, model))
        .collect::<Result<Vec<_>>>()?;
    let longest = *windows.iter().max().expect("nonempty");
    let start = panel.first_full(longest);
    if start >= panel.len() {
        return Err(Error::EmptySeries);
    }
    Ok((start..panel.len())
        .map(|j| {
            let candidates: Vec<_> = engines
                .iter()
                .map(|e| {
                    let d = e.design_at(j);
                    let c = d.conditioning();
                    (e.window(), d, c)
                })
                .collect();
            let pick = select(&candidates, thr).unwrap_or_else(|| {
                // nothing independent: report the least degenerate window
                candidates
                    .iter()
                    .enumerate()
                    .max_by(|(_, a), (_, b)| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)))
                    .map(|(i, _)| i)
                    .expect("nonempty")
            });
            let (w, d, _) = &candidates[pick];
            estimate_from(d, panel, *w, j, thr)
        })
        .collect())
}
