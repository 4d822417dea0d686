use super::grid::{Role, TimeSeries};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReturnKind {
    #[default]
    Simple,
    Log,
}

/// One-step returns. The output drops the first grid point; return `i`
/// sits at the time of price `i + 1`.
pub fn returns(prices: &TimeSeries, kind: ReturnKind) -> Result<TimeSeries> {
    let v = prices.values();
    if v.len() < 2 {
        return Err(Error::EmptySeries);
    }
    if let Some(index) = v.iter().position(|&p| p <= 0.0) {
        return Err(Error::NonPositivePrice {
            index,
            value: v[index],
        });
    }
    let out = v
        .windows(2)
        .map(|w| match kind {
            ReturnKind::Simple => (w[1] - w[0]) / w[0],
            ReturnKind::Log => (w[1] / w[0]).ln(),
        })
        .collect();
    let grid = prices.grid().skip(1)?;
    Ok(TimeSeries::with_role(grid, out, Role::Return)?
        .with_warmup(prices.warmup().saturating_sub(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::grid::SamplingGrid;

    fn prices(v: Vec<f64>) -> TimeSeries {
        TimeSeries::new(SamplingGrid::daily(v.len()).unwrap(), v).unwrap()
    }

    #[test]
    fn simple_return() {
        let r = returns(&prices(vec![100.0, 110.0]), ReturnKind::Simple).unwrap();
        assert!((r.values()[0] - 0.10).abs() < 1e-15);
        assert_eq!(r.grid().start(), 1.0);
        assert_eq!(r.role(), Role::Return);
    }

    #[test]
    fn log_return() {
        let r = returns(&prices(vec![100.0, 100.0 * 0.01f64.exp()]), ReturnKind::Log).unwrap();
        assert!((r.values()[0] - 0.01).abs() < 1e-14);
    }

    #[test]
    fn constant_prices() {
        let r = returns(&prices(vec![42.0; 10]), ReturnKind::Simple).unwrap();
        assert_eq!(r.len(), 9);
        assert!(r.values().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            returns(&prices(vec![1.0, 0.0, 2.0]), ReturnKind::Log),
            Err(Error::NonPositivePrice {
                index: 1,
                value: 0.0
            })
        );
        assert_eq!(
            returns(&prices(vec![1.0]), ReturnKind::Simple),
            Err(Error::EmptySeries)
        );
    }
}
