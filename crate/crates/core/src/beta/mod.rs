//! Wronskian-like determinants and Cramer-rule identification of windowed
//! alpha and beta coefficients.

mod design;
mod estimate;
mod multiwindow;
mod panel;
mod rolling;
mod volatility;

pub use design::DesignMatrix;
pub use estimate::{
    design_matrix, estimate, estimate_alpha_betas, estimate_betas, monofactor_ratio_beta,
    residual_integral, residual_moment, reverse_monofactor, wronskian, wronskian_with_one,
};
pub use multiwindow::{multiwindow_estimate, rolling_multiwindow};
pub use panel::{BetaEstimate, FactorPanel, IndependenceThreshold, Model};
pub use rolling::{rolling_estimate, RollingEngine};
pub use volatility::{volatility_beta, volatility_panel};
