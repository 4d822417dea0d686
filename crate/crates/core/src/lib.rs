//! Model-free windowed alpha/beta estimation.
//!
//! Coefficients of `Y = alpha + sum beta_i X_i` are identified on each
//! trailing window from iterated window averages of increasing order: the
//! resulting square system is solved by Cramer's rule, its determinant
//! playing the role of a Wronskian. Rolling evaluation slides the window
//! with O(1) updates.
//!
//! ```
//! use wronbeta_core::beta::{estimate_alpha_betas, FactorPanel, IndependenceThreshold};
//! use wronbeta_core::series::{SamplingGrid, TimeSeries, WindowSpec};
//!
//! let grid = SamplingGrid::new(0.0, 0.01, 400).unwrap();
//! let x = TimeSeries::from_fn(grid, |t| t).unwrap();
//! let y = TimeSeries::from_fn(grid, |t| 5.0 + 2.0 * t).unwrap();
//! let panel = FactorPanel::new(y, vec![x]).unwrap();
//! let est = estimate_alpha_betas(&panel, WindowSpec::new(100).unwrap(), 3.0,
//!     IndependenceThreshold::default()).unwrap();
//! assert!((est.alpha.unwrap() - 5.0).abs() < 1e-9);
//! assert!((est.betas[0] - 2.0).abs() < 1e-9);
//! ```

pub mod beta;
pub mod error;
pub mod ingest;
pub mod linalg;
pub mod moments;
pub mod series;

pub use beta::{BetaEstimate, FactorPanel, IndependenceThreshold, Model};
pub use error::{Error, Result};
pub use series::{SamplingGrid, TimeSeries, WindowSpec};
