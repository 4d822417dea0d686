//! Small dense square matrices: determinants and column norms.

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    /// Builds from columns; each column must have `columns.len()` entries.
    pub fn from_columns(columns: &[&[f64]]) -> Self {
        let dim = columns.len();
        let mut m = Self::zeros(dim);
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), dim, "column {c} has wrong length");
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.dim + c] = v;
    }

    /// Euclidean norm of every column.
    pub fn column_norms(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|c| {
                (0..self.dim)
                    .map(|r| self.get(r, c).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.dim;
        if n == 0 {
            return 1.0;
        }
        let mut a = self.data.clone();
        let mut det = 1.0;
        for k in 0..n {
            let (pivot, max) =
                (k..n)
                    .map(|r| (r, a[r * n + k].abs()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if max == 0.0 {
                return 0.0;
            }
            if pivot != k {
                for c in 0..n {
                    a.swap(k * n + c, pivot * n + c);
                }
                det = -det;
            }
            let p = a[k * n + k];
            det *= p;
            for r in k + 1..n {
                let f = a[r * n + k] / p;
                if f == 0.0 {
                    continue;
                }
                for c in k + 1..n {
                    a[r * n + c] -= f * a[k * n + c];
                }
            }
        }
        det
    }

    /// Determinant by Laplace expansion along the first row. Exponential
    /// cost; meant as an independent check for small sizes.
    pub fn det_cofactor(&self) -> f64 {
        fn expand(m: &[f64], n: usize) -> f64 {
            match n {
                0 => 1.0,
                1 => m[0],
                2 => m[0] * m[3] - m[1] * m[2],
                _ => {
                    let mut sum = 0.0;
                    let mut minor = Vec::with_capacity((n - 1) * (n - 1));
                    for c in 0..n {
                        minor.clear();
                        for r in 1..n {
                            for cc in (0..n).filter(|&cc| cc != c) {
                                minor.push(m[r * n + cc]);
                            }
                        }
                        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                        sum += sign * m[c] * expand(&minor, n - 1);
                    }
                    sum
                }
            }
        }
        expand(&self.data, self.dim)
    }

    /// Copy with column `c` replaced by `col`.
    pub fn with_column(&self, c: usize, col: &[f64]) -> Self {
        assert_eq!(col.len(), self.dim);
        let mut m = self.clone();
        for (r, &v) in col.iter().enumerate() {
            m.set(r, c, v);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_determinants() {
        let m = SquareMatrix::from_columns(&[&[2.0, 1.0], &[3.0, 4.0]]);
        assert_eq!(m.det(), 5.0);
        let id =
            SquareMatrix::from_columns(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert_eq!(id.det(), 1.0);
        // needs a row swap
        let p = SquareMatrix::from_columns(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(p.det(), -1.0);
        assert_eq!(p.det_cofactor(), -1.0);
    }

    #[test]
    fn singular_is_zero() {
        let m = SquareMatrix::from_columns(&[&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0], &[0.0, 1.0, 5.0]]);
        assert_eq!(m.det(), 0.0);
        assert_eq!(m.det_cofactor(), 0.0);
    }

    #[test]
    fn column_norms() {
        let m = SquareMatrix::from_columns(&[&[3.0, 4.0], &[0.0, -2.0]]);
        assert_eq!(m.column_norms(), vec![5.0, 2.0]);
    }

    proptest! {
        #[test]
        fn lu_agrees_with_cofactor(
            n in 1usize..5,
            entries in prop::collection::vec(-10.0f64..10.0, 16),
        ) {
            let mut m = SquareMatrix::zeros(n);
            for r in 0..n {
                for c in 0..n {
                    m.set(r, c, entries[r * 4 + c]);
                }
            }
            let (lu, cof) = (m.det(), m.det_cofactor());
            let scale: f64 = m.column_norms().iter().product();
            prop_assert!((lu - cof).abs() <= 1e-12 * scale.max(1e-300));
        }
    }
}
