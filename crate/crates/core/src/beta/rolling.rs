//! Sliding estimation over every full window, O(1) per step after an O(N)
//! table build per series.

use super::design::{unit_moments, DesignMatrix};
use super::estimate::estimate_from;
use super::panel::{BetaEstimate, FactorPanel, IndependenceThreshold, Model};
use crate::error::{Error, Result};
use crate::series::{SlidingMoments, WindowSpec};

/// Sliding-moment tables for every series of a panel at one window length.
#[derive(Debug, Clone)]
pub struct RollingEngine<'a> {
    panel: &'a FactorPanel,
    window: WindowSpec,
    model: Model,
    target: SlidingMoments,
    factors: Vec<SlidingMoments>,
    unit: Vec<f64>,
    duration: f64,
}

impl<'a> RollingEngine<'a> {
    pub fn new(panel: &'a FactorPanel, window: WindowSpec, model: Model) -> Result<Self> {
        let m = window.samples();
        let rows = model.rows(panel.n_factors());
        if rows > m {
            return Err(Error::InvalidWindow(format!(
                "{rows} equations need a window of at least {rows} samples, got {m}"
            )));
        }
        if panel.len() < m + panel.n_factors() {
            return Err(Error::EmptySeries);
        }
        Ok(Self {
            panel,
            window,
            model,
            target: SlidingMoments::new(panel.target().values(), m, rows),
            factors: panel
                .factors()
                .iter()
                .map(|f| SlidingMoments::new(f.values(), m, rows))
                .collect(),
            unit: unit_moments(m, rows),
            duration: window.duration(panel.grid()),
        })
    }

    pub fn window(&self) -> WindowSpec {
        self.window
    }

    /// Indices with a full, warm-up-free window.
    pub fn indices(&self) -> std::ops::Range<usize> {
        self.panel.first_full(self.window).min(self.panel.len())..self.panel.len()
    }

    /// Design matrix at index `j` (must lie in [`Self::indices`]).
    pub fn design_at(&self, j: usize) -> DesignMatrix {
        assert!(self.indices().contains(&j), "index {j} has no full window");
        let target = self.target.query(j);
        let factors: Vec<Vec<f64>> = self.factors.iter().map(|t| t.query(j)).collect();
        let refs: Vec<&[f64]> = factors.iter().map(Vec::as_slice).collect();
        DesignMatrix::from_moments(self.model, &target, &self.unit, &refs, self.duration)
    }

    pub fn estimate_at(&self, j: usize, thr: IndependenceThreshold) -> BetaEstimate {
        estimate_from(&self.design_at(j), self.panel, self.window, j, thr)
    }
}

/// One estimate per full-window index. Points failing the independence
/// test are kept with `independent = false` and no coefficients.
pub fn rolling_estimate(
    panel: &FactorPanel,
    window: WindowSpec,
    model: Model,
    thr: IndependenceThreshold,
) -> Result<Vec<BetaEstimate>> {
    let engine = RollingEngine::new(panel, window, model)?;
    let range = engine.indices();
    if range.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(range.map(|j| engine.estimate_at(j, thr)).collect())
}
