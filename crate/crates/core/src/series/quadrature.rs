//! Left-Riemann integrals and (iterated) trailing-window averages.
//!
//! A window of `m` samples ending at grid time `t = t_j` covers `[t - L, t)`
//! with `L = m * step`, i.e. the samples `j - m .. j`. Iterated averages of
//! order `nu` are evaluated in window-local coordinates `s = (t - tau) / L`:
//!
//! ```text
//! X^[nu](L, t) = 1 / (L (nu-1)!) * sum (t - t_i)^(nu-1) X(t_i) step
//!              = L^(nu-1) / (nu-1)! * (1/m) * sum_k (k/m)^(nu-1) X(t_{j-k})
//! ```

use super::grid::{IterOrder, TimeSeries, WindowSpec};
use crate::error::{Error, Result};

/// `sum X(t_i) * step` over grid points `t_i` in `[a, b)`.
pub fn integrate(series: &TimeSeries, a: f64, b: f64) -> Result<f64> {
    let grid = series.grid();
    let out_of_range = || Error::OutOfRange {
        a,
        b,
        start: grid.start(),
        end: grid.end(),
    };
    if a > b {
        return Err(out_of_range());
    }
    let ia = grid.index_of(a).map_err(|e| match e {
        Error::OutOfRange { .. } => out_of_range(),
        e => e,
    })?;
    let ib = grid.index_of(b).map_err(|e| match e {
        Error::OutOfRange { .. } => out_of_range(),
        e => e,
    })?;
    let sum: f64 = series.values()[ia..ib].iter().sum();
    Ok(sum * grid.step())
}

pub(crate) fn check_window(index: usize, window: WindowSpec, first: usize) -> Result<()> {
    let m = window.samples();
    if index < first + m {
        return Err(Error::WindowUnderflow {
            index,
            window: m,
            first,
        });
    }
    Ok(())
}

/// Mean of the `m` samples preceding index `j`.
pub(crate) fn window_mean_at(values: &[f64], j: usize, m: usize) -> f64 {
    let sum: f64 = values[j - m..j].iter().rev().sum();
    sum / m as f64
}

/// `integrate(series, t - L, t) / L`.
pub fn window_average(series: &TimeSeries, window: WindowSpec, t: f64) -> Result<f64> {
    let j = series.grid().index_of(t)?;
    check_window(j, window, 0)?;
    Ok(window_mean_at(series.values(), j, window.samples()))
}

/// `L^(nu-1) / (nu-1)!`, the factor between an iterated average and its
/// window-local normalized moment.
pub fn order_scale(duration: f64, nu: usize) -> f64 {
    (1..nu).fold(1.0, |acc, k| acc * duration / k as f64)
}

/// Normalized local moments `(1/m) sum_{k=1}^{m} (k/m)^q X(t_{j-k})` for
/// `q = 0..orders`. Direct O(m) evaluation.
pub(crate) fn local_moments_direct(values: &[f64], j: usize, m: usize, orders: usize) -> Vec<f64> {
    // Neumaier-compensated sums: windows run to 10^4 samples and the
    // moment matrices can be ill-conditioned.
    let mut acc = vec![0.0; orders];
    let mut comp = vec![0.0; orders];
    let inv_m = 1.0 / m as f64;
    for k in 1..=m {
        let x = values[j - k];
        let s = k as f64 * inv_m;
        let mut w = 1.0;
        for (a, c) in acc.iter_mut().zip(comp.iter_mut()) {
            let term = w * x;
            let sum = *a + term;
            *c += if a.abs() >= term.abs() {
                (*a - sum) + term
            } else {
                (term - sum) + *a
            };
            *a = sum;
            w *= s;
        }
    }
    acc.iter()
        .zip(&comp)
        .map(|(a, c)| (a + c) * inv_m)
        .collect()
}

/// Iterated window average of order `nu`.
///
/// For `nu = 1` this is exactly [`window_average`]; for the constant unit
/// series it tends to `L^(nu-1) / nu!` as the step shrinks.
pub fn iterated_average(
    series: &TimeSeries,
    nu: IterOrder,
    window: WindowSpec,
    t: f64,
) -> Result<f64> {
    if nu.get() == 1 {
        return window_average(series, window, t);
    }
    let j = series.grid().index_of(t)?;
    check_window(j, window, 0)?;
    let m = window.samples();
    let q = nu.get() - 1;
    let inv_m = 1.0 / m as f64;
    let sum: f64 = (1..=m)
        .map(|k| (k as f64 * inv_m).powi(q as i32) * series.values()[j - k])
        .sum();
    let duration = window.duration(series.grid());
    Ok(order_scale(duration, nu.get()) * sum * inv_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::grid::SamplingGrid;

    fn unit_grid(step: f64) -> SamplingGrid {
        let n = (1.0 / step).round() as usize + 1;
        SamplingGrid::new(0.0, step, n).unwrap()
    }

    #[test]
    fn integrate_constant() {
        let g = unit_grid(0.001);
        let x = TimeSeries::from_fn(g, |_| 1.0).unwrap();
        assert!((integrate(&x, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn integrate_identity_is_left_riemann() {
        let g = unit_grid(0.001);
        let x = TimeSeries::from_fn(g, |t| t).unwrap();
        // sum_{i<1000} i * d * d = d^2 * 999 * 1000 / 2
        assert!((integrate(&x, 0.0, 1.0).unwrap() - 0.4995).abs() < 1e-12);
    }

    #[test]
    fn integrate_empty_interval() {
        let g = unit_grid(0.001);
        let x = TimeSeries::from_fn(g, |t| t * t + 3.0).unwrap();
        assert_eq!(integrate(&x, 0.25, 0.25).unwrap(), 0.0);
    }

    #[test]
    fn integrate_errors() {
        let g = unit_grid(0.01);
        let x = TimeSeries::from_fn(g, |t| t).unwrap();
        assert!(matches!(
            integrate(&x, 0.0, 1.5),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            integrate(&x, -0.5, 0.5),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            integrate(&x, 0.005, 0.5),
            Err(Error::NotOnGrid(_))
        ));
        assert!(matches!(
            integrate(&x, 0.6, 0.5),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn window_average_cases() {
        let g = SamplingGrid::new(0.0, 0.001, 3001).unwrap();
        let w = WindowSpec::new(1000).unwrap();
        let c = TimeSeries::from_fn(g, |_| 4.25).unwrap();
        assert!((window_average(&c, w, 2.0).unwrap() - 4.25).abs() < 1e-12);

        let lin = TimeSeries::from_fn(g, |t| t).unwrap();
        let t = 2.5;
        let got = window_average(&lin, w, t).unwrap();
        assert!((got - (t - 0.5)).abs() <= 0.001);

        // three whole periods of a sine over L = 1
        let sine =
            TimeSeries::from_fn(g, |t| (2.0 * std::f64::consts::PI * 3.0 * t).sin()).unwrap();
        assert!(window_average(&sine, w, 1.7).unwrap().abs() < 1e-3);
    }

    #[test]
    fn window_average_underflow() {
        let g = SamplingGrid::new(0.0, 1.0, 50).unwrap();
        let x = TimeSeries::from_fn(g, |t| t).unwrap();
        let w = WindowSpec::new(10).unwrap();
        assert!(matches!(
            window_average(&x, w, 9.0),
            Err(Error::WindowUnderflow {
                index: 9,
                window: 10,
                ..
            })
        ));
        assert!(window_average(&x, w, 10.0).is_ok());
    }

    #[test]
    fn iterated_average_of_identity_order_two() {
        let step = 1e-3;
        let g = SamplingGrid::new(0.0, step, 4001).unwrap();
        let w = WindowSpec::new(1000).unwrap();
        let x = TimeSeries::from_fn(g, |t| t).unwrap();
        let (t, l) = (3.2, 1.0);
        let got = iterated_average(&x, IterOrder::new(2).unwrap(), w, t).unwrap();
        let expect = t * l / 2.0 - l * l / 3.0;
        assert!((got - expect).abs() <= 2.0 * step * t, "{got} vs {expect}");
    }

    #[test]
    fn order_one_is_window_average_bitwise() {
        let g = SamplingGrid::new(0.0, 0.1, 200).unwrap();
        let x = TimeSeries::from_fn(g, |t| (t * 1.7).sin() * 3.0 + t).unwrap();
        let w = WindowSpec::new(37).unwrap();
        for j in 37..200 {
            let t = g.time(j);
            let a = window_average(&x, w, t).unwrap();
            let b = iterated_average(&x, IterOrder::new(1).unwrap(), w, t).unwrap();
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn local_moments_match_iterated_average() {
        let g = SamplingGrid::new(1.0, 0.5, 120).unwrap();
        let x = TimeSeries::from_fn(g, |t| t.cos() + 0.1 * t).unwrap();
        let w = WindowSpec::new(40).unwrap();
        let j = 90;
        let moments = local_moments_direct(x.values(), j, 40, 4);
        let l = w.duration(&g);
        for nu in 1..=4 {
            let direct = iterated_average(&x, IterOrder::new(nu).unwrap(), w, g.time(j)).unwrap();
            let via = order_scale(l, nu) * moments[nu - 1];
            assert!((direct - via).abs() <= 1e-12 * direct.abs().max(1.0));
        }
    }
}
