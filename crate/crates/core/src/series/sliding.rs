//! O(1) sliding evaluation of normalized local moments.
//!
//! The series is cut into blocks of `m` samples. For every block we keep
//! forward partial sums anchored at the block start and backward partial
//! sums anchored at the block end, both in powers of `(i - anchor) / m`.
//! Any window of `m` samples straddles at most one block boundary `a`, so
//! its moments about `a` are one head lookup plus one tail lookup; a
//! binomial shift then moves them to the window end. All offsets stay in
//! `[-1, 1]`, so nothing grows with the absolute position in the series.

/// Largest number of moments a table carries.
pub const MAX_ORDERS: usize = 16;

/// Precomputed table answering `(1/m) sum_{k=1}^{m} (k/m)^q X_{j-k}` for
/// `q = 0..orders` in constant time per query.
#[derive(Debug, Clone)]
pub struct SlidingMoments {
    m: usize,
    orders: usize,
    len: usize,
    // layout: [(block * (m + 1) + r) * orders + p]
    head: Vec<f64>,
    tail: Vec<f64>,
    binom: Vec<Vec<f64>>,
}

impl SlidingMoments {
    /// Builds the table for windows of `m` samples. `orders` is the number
    /// of moments (`q = 0..orders`).
    pub fn new(values: &[f64], m: usize, orders: usize) -> Self {
        assert!(m >= 1 && (1..=MAX_ORDERS).contains(&orders));
        let len = values.len();
        let blocks = len / m + 1;
        let stride = (m + 1) * orders;
        let mut head = vec![0.0; blocks * stride];
        let mut tail = vec![0.0; blocks * stride];
        let inv_m = 1.0 / m as f64;

        for b in 0..blocks {
            let a = b * m;
            let base = b * stride;
            for r in 1..=m {
                let i = a + r - 1;
                let (prev, cur) =
                    head[base + (r - 1) * orders..base + (r + 1) * orders].split_at_mut(orders);
                if i >= len {
                    cur.copy_from_slice(prev);
                    continue;
                }
                let u = (r - 1) as f64 * inv_m;
                let mut w = values[i];
                for p in 0..orders {
                    cur[p] = prev[p] + w;
                    w *= u;
                }
            }
            // tails only matter for complete blocks
            let e = a + m;
            if e > len {
                continue;
            }
            for r in 1..=m {
                let i = e - r;
                let (prev, cur) =
                    tail[base + (r - 1) * orders..base + (r + 1) * orders].split_at_mut(orders);
                let u = -(r as f64) * inv_m;
                let mut w = values[i];
                for p in 0..orders {
                    cur[p] = prev[p] + w;
                    w *= u;
                }
            }
        }

        let binom = (0..orders)
            .map(|q| {
                let mut row = vec![1.0; q + 1];
                for p in 1..q {
                    row[p] = row[p - 1] * (q - p + 1) as f64 / p as f64;
                }
                row
            })
            .collect();

        Self {
            m,
            orders,
            len,
            head,
            tail,
            binom,
        }
    }

    pub fn window(&self) -> usize {
        self.m
    }

    pub fn orders(&self) -> usize {
        self.orders
    }

    /// Moments of the window ending (exclusively) at index `j`, `m <= j <= len`.
    pub fn query(&self, j: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.orders];
        self.query_into(j, &mut out);
        out
    }

    pub fn query_into(&self, j: usize, out: &mut [f64]) {
        let (m, orders) = (self.m, self.orders);
        assert!(j >= m && j <= self.len, "window end {j} out of range");
        assert_eq!(out.len(), orders);
        let start = j - m;
        let anchor = start.div_ceil(m) * m;
        let block = anchor / m;
        let stride = (m + 1) * orders;

        // moments about the anchor, offsets (i - anchor) / m
        let mut about = [0.0f64; MAX_ORDERS];
        let about = &mut about[..orders];
        let rh = j - anchor;
        if rh > 0 {
            let h = &self.head[block * stride + rh * orders..][..orders];
            about.copy_from_slice(h);
        } else {
            about.fill(0.0);
        }
        let rt = anchor - start;
        if rt > 0 {
            let t = &self.tail[(block - 1) * stride + rt * orders..][..orders];
            about.iter_mut().zip(t).for_each(|(a, b)| *a += b);
        }

        // s = (j - i) / m = d - u with d = (j - anchor) / m
        let d = rh as f64 / m as f64;
        let inv_m = 1.0 / m as f64;
        for (q, o) in out.iter_mut().enumerate() {
            let coeffs = &self.binom[q];
            let mut acc = 0.0;
            let mut dpow = 1.0;
            // p runs q..=0 so that d^(q-p) builds up incrementally
            for p in (0..=q).rev() {
                let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * coeffs[p] * dpow * about[p];
                dpow *= d;
            }
            *o = acc * inv_m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::quadrature::local_moments_direct;
    use proptest::prelude::*;

    #[test]
    fn matches_direct_on_every_window() {
        let values: Vec<f64> = (0..257)
            .map(|i| ((i as f64) * 0.37).sin() * 5.0 + i as f64 * 0.01)
            .collect();
        for m in [1usize, 2, 7, 16, 64, 257] {
            let table = SlidingMoments::new(&values, m, 4);
            for j in m..=values.len() {
                let fast = table.query(j);
                let slow = local_moments_direct(&values, j, m, 4);
                for (a, b) in fast.iter().zip(&slow) {
                    assert!(
                        (a - b).abs() <= 1e-12 * (1.0 + b.abs()),
                        "m={m} j={j}: {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn constant_series_gives_power_sums() {
        let values = vec![1.0; 100];
        let table = SlidingMoments::new(&values, 10, 3);
        let got = table.query(57);
        // (1/m) sum_{k=1}^{10} (k/10)^q
        let expect: Vec<f64> = (0..3)
            .map(|q| (1..=10).map(|k| (k as f64 / 10.0).powi(q)).sum::<f64>() / 10.0)
            .collect();
        for (a, b) in got.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    proptest! {
        #[test]
        fn agrees_with_direct(
            values in prop::collection::vec(-1e3f64..1e3, 20..200),
            m in 1usize..20,
            orders in 1usize..6,
        ) {
            let table = SlidingMoments::new(&values, m, orders);
            let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
            for j in m..=values.len() {
                let fast = table.query(j);
                let slow = local_moments_direct(&values, j, m, orders);
                for (a, b) in fast.iter().zip(&slow) {
                    prop_assert!((a - b).abs() <= 1e-11 * scale);
                }
            }
        }
    }
}
