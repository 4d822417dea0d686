use crate::error::{Error, Result};
use crate::series::{SamplingGrid, TimeSeries, WindowSpec};

/// A target series `Y` and factors `X_1..X_n` on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorPanel {
    target: TimeSeries,
    factors: Vec<TimeSeries>,
}

impl FactorPanel {
    pub fn new(target: TimeSeries, factors: Vec<TimeSeries>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidWindow(
                "a panel needs at least one factor".into(),
            ));
        }
        if factors.iter().any(|f| !f.grid().same_as(target.grid())) {
            return Err(Error::GridMismatch);
        }
        Ok(Self { target, factors })
    }

    pub fn target(&self) -> &TimeSeries {
        &self.target
    }

    pub fn factors(&self) -> &[TimeSeries] {
        &self.factors
    }

    pub fn n_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn grid(&self) -> &SamplingGrid {
        self.target.grid()
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    /// First index whose value is not warm-up in every series.
    pub fn first_clean(&self) -> usize {
        self.factors
            .iter()
            .map(TimeSeries::warmup)
            .fold(self.target.warmup(), usize::max)
    }

    /// First index at which a full, warm-up-free window of `window` exists.
    pub fn first_full(&self, window: WindowSpec) -> usize {
        self.first_clean() + window.samples()
    }
}

/// Which windowed linear relation to identify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// `Y = alpha + sum beta_i X_i`
    WithAlpha,
    /// `Y = sum beta_i X_i`
    BetasOnly,
}

impl Model {
    /// Number of equations (iterated-average orders) for `n` factors.
    pub fn rows(self, n: usize) -> usize {
        match self {
            Model::WithAlpha => n + 1,
            Model::BetasOnly => n,
        }
    }
}

/// Numeric surrogate for an appreciable determinant:
/// `|det| >= epsilon * prod(column norms)` on the window-local matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndependenceThreshold {
    epsilon: f64,
}

impl IndependenceThreshold {
    pub const DEFAULT_EPSILON: f64 = 1e-8;

    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidWindow(format!(
                "epsilon {epsilon} must be > 0"
            )));
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

impl Default for IndependenceThreshold {
    fn default() -> Self {
        Self {
            epsilon: Self::DEFAULT_EPSILON,
        }
    }
}

/// Windowed coefficients at one evaluation time.
///
/// When `independent` is false the coefficients are absent: `alpha` is
/// `None` and `betas` is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaEstimate {
    pub model: Model,
    pub alpha: Option<f64>,
    pub betas: Vec<f64>,
    /// Wronskian-like determinant of the iterated averages.
    pub wronskian: f64,
    /// `|det| / prod(column norms)` of the window-local matrix, in `[0, 1]`.
    pub conditioning: f64,
    pub window: WindowSpec,
    pub at: f64,
    pub index: usize,
    pub independent: bool,
    pub residual_integral: Option<f64>,
}
