use super::panel::{BetaEstimate, FactorPanel, IndependenceThreshold, Model};
use super::rolling::rolling_estimate;
use crate::error::Result;
use crate::moments::volatility;
use crate::series::WindowSpec;

/// Panel of volatility series: `vol(Y)` against `vol(X_1)..vol(X_n)`.
pub fn volatility_panel(panel: &FactorPanel, w_vol: WindowSpec) -> Result<FactorPanel> {
    let target = volatility(panel.target(), w_vol)?.into_series();
    let factors = panel
        .factors()
        .iter()
        .map(|f| Ok(volatility(f, w_vol)?.into_series()))
        .collect::<Result<Vec<_>>>()?;
    FactorPanel::new(target, factors)
}

/// Rolling betas between volatility series rather than values: the second,
/// independent comparison channel next to the value/return betas.
pub fn volatility_beta(
    panel: &FactorPanel,
    w_vol: WindowSpec,
    w_beta: WindowSpec,
    model: Model,
    thr: IndependenceThreshold,
) -> Result<Vec<BetaEstimate>> {
    rolling_estimate(&volatility_panel(panel, w_vol)?, w_beta, model, thr)
}
