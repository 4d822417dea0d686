use crate::error::{Error, Result};

/// Uniform sampling `start + i * step`, `i = 0..count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingGrid {
    start: f64,
    step: f64,
    count: usize,
}

impl SamplingGrid {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !start.is_finite() {
            return Err(Error::InvalidGrid(format!("start {start} is not finite")));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidGrid(format!("step {step} must be > 0")));
        }
        if count == 0 {
            return Err(Error::InvalidGrid("count must be >= 1".into()));
        }
        Ok(Self { start, step, count })
    }

    /// Trading-day grid: index `i` at time `i`.
    pub fn daily(count: usize) -> Result<Self> {
        Self::new(0.0, 1.0, count)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn time(&self, index: usize) -> f64 {
        self.start + index as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.time(self.count - 1)
    }

    /// Index of the grid point at time `t`.
    ///
    /// Times within `1e-9` steps of a grid point are snapped to it.
    pub fn index_of(&self, t: f64) -> Result<usize> {
        if !t.is_finite() {
            return Err(Error::NotOnGrid(t));
        }
        let pos = (t - self.start) / self.step;
        let rounded = pos.round();
        if (pos - rounded).abs() > 1e-9 * rounded.abs().max(1.0) {
            return Err(Error::NotOnGrid(t));
        }
        if rounded < 0.0 || rounded > (self.count - 1) as f64 {
            return Err(Error::OutOfRange {
                a: t,
                b: t,
                start: self.start,
                end: self.end(),
            });
        }
        Ok(rounded as usize)
    }

    /// Same grid with the first `skip` points removed.
    pub fn skip(&self, skip: usize) -> Result<Self> {
        if skip >= self.count {
            return Err(Error::EmptySeries);
        }
        Self::new(self.time(skip), self.step, self.count - skip)
    }

    /// Grids match when they sample the same times.
    pub fn same_as(&self, other: &Self) -> bool {
        self.count == other.count
            && self.step == other.step
            && (self.start - other.start).abs() <= 1e-9 * self.step
    }
}

/// What a series represents. Purely descriptive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Role {
    Price,
    Return,
    Trend,
    Fluctuation,
    Volatility,
    #[default]
    Generic,
}

/// Finite values on a [`SamplingGrid`].
///
/// The first `warmup` values were produced from partial windows; estimators
/// refuse windows that reach into them.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    grid: SamplingGrid,
    values: Vec<f64>,
    role: Role,
    warmup: usize,
}

impl TimeSeries {
    pub fn new(grid: SamplingGrid, values: Vec<f64>) -> Result<Self> {
        Self::with_role(grid, values, Role::Generic)
    }

    pub fn with_role(grid: SamplingGrid, values: Vec<f64>, role: Role) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::LengthMismatch {
                expected: grid.count(),
                actual: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            grid,
            values,
            role,
            warmup: 0,
        })
    }

    /// Samples `f(t)` at every grid time.
    pub fn from_fn(grid: SamplingGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..grid.count()).map(|i| f(grid.time(i))).collect();
        Self::new(grid, values)
    }

    pub(crate) fn with_warmup(mut self, warmup: usize) -> Self {
        self.warmup = warmup.min(self.values.len());
        self
    }

    pub fn grid(&self) -> &SamplingGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// Number of leading values flagged as warm-up.
    pub fn warmup(&self) -> usize {
        self.warmup
    }

    pub fn is_warmup(&self, index: usize) -> bool {
        index < self.warmup
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub(crate) fn set_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    /// Elementwise `f(self, other)` on a shared grid; warm-up is the larger of the two.
    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self::new(self.grid, values)?.with_warmup(self.warmup.max(other.warmup)))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = self.values.iter().map(|&v| f(v)).collect();
        Ok(Self::with_role(self.grid, values, self.role)?.with_warmup(self.warmup))
    }
}

/// Trailing window of `length` samples, i.e. `L = length * step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WindowSpec {
    length: usize,
}

impl WindowSpec {
    pub fn new(length: usize) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidWindow(
                "window needs at least one sample".into(),
            ));
        }
        Ok(Self { length })
    }

    pub fn samples(&self) -> usize {
        self.length
    }

    /// Window length in time units on `grid`.
    pub fn duration(&self, grid: &SamplingGrid) -> f64 {
        self.length as f64 * grid.step()
    }
}

/// Order `nu >= 1` of an iterated window integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct IterOrder(usize);

impl IterOrder {
    pub fn new(nu: usize) -> Result<Self> {
        if nu == 0 {
            return Err(Error::InvalidOrder);
        }
        Ok(Self(nu))
    }

    pub fn get(&self) -> usize {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(SamplingGrid::new(0.0, 0.0, 10).is_err());
        assert!(SamplingGrid::new(0.0, -1.0, 10).is_err());
        assert!(SamplingGrid::new(0.0, 1.0, 0).is_err());
        assert!(SamplingGrid::new(f64::NAN, 1.0, 3).is_err());
    }

    #[test]
    fn grid_times_increase() {
        let g = SamplingGrid::new(2.0, 0.25, 5).unwrap();
        assert_eq!(g.time(0), 2.0);
        assert_eq!(g.time(4), 3.0);
        assert_eq!(g.end(), 3.0);
        assert_eq!(g.index_of(2.75).unwrap(), 3);
        assert!(matches!(g.index_of(2.1), Err(Error::NotOnGrid(_))));
        assert!(matches!(g.index_of(3.25), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn index_of_tolerates_accumulated_rounding() {
        let g = SamplingGrid::new(0.0, 0.001, 1001).unwrap();
        let t = (0..700).fold(0.0, |acc, _| acc + 0.001);
        assert_eq!(g.index_of(t).unwrap(), 700);
    }

    #[test]
    fn series_validates_values() {
        let g = SamplingGrid::daily(3).unwrap();
        assert!(matches!(
            TimeSeries::new(g, vec![1.0, 2.0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            TimeSeries::new(g, vec![1.0, f64::INFINITY, 2.0]),
            Err(Error::NonFinite { index: 1 })
        ));
    }

    #[test]
    fn window_and_order_reject_zero() {
        assert!(WindowSpec::new(0).is_err());
        assert!(IterOrder::new(0).is_err());
        let g = SamplingGrid::new(0.0, 0.5, 10).unwrap();
        assert_eq!(WindowSpec::new(4).unwrap().duration(&g), 2.0);
    }
}
