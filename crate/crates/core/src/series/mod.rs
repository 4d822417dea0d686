//! Sampling grids, window quadrature and the trend/fluctuation split.

mod decompose;
mod grid;
mod quadrature;
mod returns;
pub mod sliding;

pub(crate) use decompose::trailing_mean;
pub use decompose::{decompose, fluctuation, trend, Decomposition};
pub use grid::{IterOrder, Role, SamplingGrid, TimeSeries, WindowSpec};
pub(crate) use quadrature::{check_window, local_moments_direct};
pub use quadrature::{integrate, iterated_average, order_scale, window_average};
pub use returns::{returns, ReturnKind};
pub use sliding::SlidingMoments;
