//! Synthetic panels shared by the benchmarks.

use wronbeta_core::{FactorPanel, SamplingGrid, TimeSeries};

/// `n`-factor panel of `len` daily samples with smooth, independent factors
/// and a target built from fixed coefficients.
pub fn synthetic_panel(len: usize, n: usize) -> FactorPanel {
    let grid = SamplingGrid::daily(len).expect("len > 0");
    let factors: Vec<TimeSeries> = (0..n)
        .map(|i| {
            let f = 1.0 + i as f64;
            TimeSeries::from_fn(grid, move |t| {
                (t * 0.013 * f).sin() + 0.002 * f * t + 0.1 * f
            })
            .expect("finite")
        })
        .collect();
    let target = TimeSeries::new(
        grid,
        (0..len)
            .map(|j| {
                0.5 + factors
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (i as f64 + 1.5) * x.values()[j])
                    .sum::<f64>()
            })
            .collect(),
    )
    .expect("finite");
    FactorPanel::new(target, factors).expect("shared grid")
}
